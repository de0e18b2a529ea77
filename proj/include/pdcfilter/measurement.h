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

#ifndef PDCFILTER_MEASUREMENT_H
#define PDCFILTER_MEASUREMENT_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdcfilter/fock.h"
#include "pdcfilter/optics_network.h"

namespace pdcfilter {

/// Polarization qubits of k spatial modes, one photon each.
///
/// Basis index bit (k - 1 - q) holds qubit q, with H = 0 and V = 1, so the
/// first mode is the most significant qubit: for k = 2 the order is HH, HV, VH, VV.
class QubitRegister {
   public:
    /// Throws std::invalid_argument unless the vector has length 2^k and unit norm within 1e-12.
    QubitRegister(std::vector<Spatial> modes, Eigen::VectorXcd amplitudes);

    const std::vector<Spatial> &modes() const { return modes_; }
    const Eigen::VectorXcd &amplitudes() const { return amplitudes_; }
    size_t num_qubits() const { return modes_.size(); }
    size_t dimension() const { return static_cast<size_t>(amplitudes_.size()); }
    Amplitude operator[](size_t basis) const { return amplitudes_(static_cast<Eigen::Index>(basis)); }

    /// Copy whose first non-zero amplitude is real and positive.
    QubitRegister phase_fixed() const;

    /// Basis ket label such as "HVVH".
    std::string basis_label(size_t basis) const;

   private:
    std::vector<Spatial> modes_;
    Eigen::VectorXcd amplitudes_;
};

struct PostSelection {
    double probability = 0;
    /// Empty when the projection has zero probability.
    std::optional<QubitRegister> state;
};

/// Projects a network output onto exactly one photon in each of `modes` and
/// none elsewhere, and returns the phase-fixed conditional polarization state.
///
/// Throws std::invalid_argument unless `modes` are distinct outputs a..f and
/// their number is even and at least 2.
PostSelection postselect(const FockState &state, std::span<const Spatial> modes);

/// Born probabilities of all 2^k outcome strings. Index bit (k - 1 - q) set
/// means qubit q gave -1.
std::vector<double> outcome_distribution(const QubitRegister &state, std::span<const double> thetas);

/// Looks up each qubit's analyzer angle by mode.
std::vector<double> thetas_for(const QubitRegister &state, std::span<const AnalyzerSetting> settings);

/// Probability of one +-1 outcome string.
double outcome_probability(const QubitRegister &state, std::span<const AnalyzerSetting> settings, std::span<const int> outcomes);

double correlation_from_state(const QubitRegister &state, std::span<const AnalyzerSetting> settings);
double correlation_from_state(const QubitRegister &state, std::span<const double> thetas);

/// Outcome distribution for measuring each qubit along a Pauli axis ('x', 'y' or 'z').
std::vector<double> pauli_outcome_distribution(const QubitRegister &state, std::string_view axes);

/// Product of outcome signs for the basis index of an outcome string.
int outcome_sign(size_t outcome);

struct CoincidencePattern {
    std::vector<Spatial> modes;
    std::vector<int> outcomes;
};

struct CountRecord {
    CoincidencePattern pattern;
    std::vector<double> settings;
    uint64_t counts = 0;
    double duration = 1;
};

/// Multinomial draw of `shots` events over `probabilities`, deterministic given the seed.
std::vector<uint64_t> sample_counts(std::span<const double> probabilities, uint64_t shots, uint64_t seed);

/// Simulated coincidence counter: one record per outcome string that fired.
std::vector<CountRecord> monte_carlo_counts(
    const QubitRegister &state, std::span<const double> thetas, uint64_t shots, uint64_t seed);

/// Same, drawing from an explicit outcome distribution (e.g. a noise-degraded one).
std::vector<CountRecord> monte_carlo_counts(
    std::span<const Spatial> modes,
    std::span<const double> thetas,
    std::span<const double> probabilities,
    uint64_t shots,
    uint64_t seed);

}  // namespace pdcfilter

#endif
