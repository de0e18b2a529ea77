// Copyright 2026 The pdcfilter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PDCFILTER_FOCK_H
#define PDCFILTER_FOCK_H

#include <array>
#include <bitset>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pdcfilter {

using Amplitude = std::complex<double>;

/// Spatial modes of the setup: the two source fibres and the six analyzed outputs.
enum class Spatial : uint8_t { a0 = 0, b0, a, b, c, d, e, f };
enum class Pol : uint8_t { H = 0, V = 1 };

constexpr size_t NUM_SPATIAL = 8;
constexpr size_t NUM_MODES = 2 * NUM_SPATIAL;

/// Smallest amplitude magnitude kept in a FockState after any transformation.
constexpr double PRUNE_TOLERANCE = 1e-14;

std::string_view spatial_name(Spatial s);
Spatial parse_spatial(std::string_view name);

/// The six output spatial modes in canonical order (a, b, c, d, e, f).
const std::array<Spatial, 6> &output_spatial_modes();

struct ModeId {
    Spatial spatial;
    Pol pol;

    /// Position in the global ordering a0H, a0V, b0H, b0V, aH, aV, ..., fV.
    constexpr size_t index() const {
        return 2 * static_cast<size_t>(spatial) + static_cast<size_t>(pol);
    }
    static ModeId from_index(size_t index);
    std::string str() const;

    auto operator<=>(const ModeId &) const = default;
};

/// Photon counts per mode, indexed by ModeId::index().
using Occupation = std::array<uint8_t, NUM_MODES>;

size_t total_photons(const Occupation &occ);
std::string occupation_str(const Occupation &occ);

/// Subset of the global mode list a state is declared over.
class ModeSet {
   public:
    constexpr ModeSet() = default;
    static ModeSet all();
    static ModeSet of(std::initializer_list<ModeId> modes);

    bool contains(ModeId m) const { return bits_[m.index()]; }
    ModeSet with(ModeId m) const;
    bool includes(const ModeSet &other) const { return (other.bits_ & ~bits_).none(); }
    bool operator==(const ModeSet &other) const = default;

   private:
    std::bitset<NUM_MODES> bits_;
};

/// Sparse superposition of occupation-number kets.
///
/// Terms are stored in lexicographic occupation order, so iteration is
/// deterministic. Amplitudes below PRUNE_TOLERANCE are dropped on construction.
class FockState {
   public:
    /// Vacuum over every mode.
    FockState();
    explicit FockState(ModeSet modes);
    FockState(ModeSet modes, std::map<Occupation, Amplitude> terms);

    static FockState vacuum(ModeSet modes = ModeSet::all());
    static FockState number_state(const Occupation &occ, ModeSet modes = ModeSet::all());

    const ModeSet &modes() const { return modes_; }
    const std::map<Occupation, Amplitude> &terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Amplitude of a basis ket, zero when absent.
    Amplitude amplitude(const Occupation &occ) const;

    double norm_squared() const;
    double norm() const;
    FockState normalized() const;

    /// Keeps only kets with exactly `photons` photons in total.
    FockState photon_number_sector(size_t photons) const;

    FockState operator*(Amplitude scale) const;
    FockState operator+(const FockState &other) const;
    FockState operator-(const FockState &other) const;

   private:
    ModeSet modes_;
    std::map<Occupation, Amplitude> terms_;
};

/// A passive linear-optical transformation on an ordered list of modes.
///
/// Creation operators transform as a_i^dag -> sum_j U(j, i) a_j^dag, with i and
/// j indexing `modes()`.
class ModeUnitary {
   public:
    /// Throws std::invalid_argument when the matrix is not unitary within 1e-10,
    /// has the wrong shape, or the mode list repeats a mode.
    ModeUnitary(std::vector<ModeId> modes, Eigen::MatrixXcd matrix);

    static ModeUnitary identity(std::vector<ModeId> modes);

    const std::vector<ModeId> &modes() const { return modes_; }
    const Eigen::MatrixXcd &matrix() const { return matrix_; }

    /// Same transformation extended by identity onto `modes`, which must contain modes().
    ModeUnitary embedded(const std::vector<ModeId> &modes) const;

   private:
    std::vector<ModeId> modes_;
    Eigen::MatrixXcd matrix_;
};

/// Returns the unitary that applies `first` and then `second`, over the union of their modes.
ModeUnitary compose(const ModeUnitary &second, const ModeUnitary &first);

/// a^dag on `mode`; the result is not renormalized.
FockState apply_creation(const FockState &state, ModeId mode);
/// a on `mode`; the result is not renormalized.
FockState apply_annihilation(const FockState &state, ModeId mode);

/// <x|y>. Throws std::invalid_argument when the two states use different mode sets.
Amplitude inner_product(const FockState &x, const FockState &y);

/// Expands every ket as a monomial of creation operators, substitutes the
/// transformed operators, and re-expands with bosonic normalization factors.
FockState apply_mode_unitary(const FockState &state, const ModeUnitary &u);

}  // namespace pdcfilter

#endif
