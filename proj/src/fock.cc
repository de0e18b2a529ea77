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

#include "pdcfilter/fock.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdcfilter {

namespace {

constexpr std::array<std::string_view, NUM_SPATIAL> SPATIAL_NAMES = {"a0", "b0", "a", "b", "c", "d", "e", "f"};

double factorial(size_t n) {
    double r = 1;
    for (size_t k = 2; k <= n; k++) {
        r *= static_cast<double>(k);
    }
    return r;
}

double sqrt_factorial_product(const Occupation &occ) {
    double r = 1;
    for (auto n : occ) {
        r *= factorial(n);
    }
    return std::sqrt(r);
}

void accumulate(std::map<Occupation, Amplitude> &terms, const Occupation &occ, Amplitude amp) {
    auto [it, inserted] = terms.try_emplace(occ, amp);
    if (!inserted) {
        it->second += amp;
    }
}

std::map<Occupation, Amplitude> pruned(std::map<Occupation, Amplitude> terms) {
    std::erase_if(terms, [](const auto &kv) {
        return std::abs(kv.second) < PRUNE_TOLERANCE;
    });
    return terms;
}

}  // namespace

std::string_view spatial_name(Spatial s) {
    return SPATIAL_NAMES[static_cast<size_t>(s)];
}

Spatial parse_spatial(std::string_view name) {
    for (size_t k = 0; k < NUM_SPATIAL; k++) {
        if (SPATIAL_NAMES[k] == name) {
            return static_cast<Spatial>(k);
        }
    }
    throw std::invalid_argument("unknown spatial mode '" + std::string(name) + "'");
}

const std::array<Spatial, 6> &output_spatial_modes() {
    static const std::array<Spatial, 6> modes = {Spatial::a, Spatial::b, Spatial::c, Spatial::d, Spatial::e, Spatial::f};
    return modes;
}

ModeId ModeId::from_index(size_t index) {
    if (index >= NUM_MODES) {
        throw std::out_of_range("mode index out of range");
    }
    return ModeId{static_cast<Spatial>(index / 2), static_cast<Pol>(index % 2)};
}

std::string ModeId::str() const {
    return std::string(spatial_name(spatial)) + (pol == Pol::H ? "H" : "V");
}

size_t total_photons(const Occupation &occ) {
    size_t n = 0;
    for (auto c : occ) {
        n += c;
    }
    return n;
}

std::string occupation_str(const Occupation &occ) {
    std::string out = "|";
    bool first = true;
    for (size_t k = 0; k < NUM_MODES; k++) {
        if (occ[k] == 0) {
            continue;
        }
        if (!first) {
            out += ",";
        }
        first = false;
        out += std::to_string(occ[k]) + ModeId::from_index(k).str();
    }
    return out + ">";
}

ModeSet ModeSet::all() {
    ModeSet s;
    s.bits_.set();
    return s;
}

ModeSet ModeSet::of(std::initializer_list<ModeId> modes) {
    ModeSet s;
    for (auto m : modes) {
        s.bits_.set(m.index());
    }
    return s;
}

ModeSet ModeSet::with(ModeId m) const {
    ModeSet s = *this;
    s.bits_.set(m.index());
    return s;
}

FockState::FockState() : FockState(ModeSet::all()) {
}

FockState::FockState(ModeSet modes) : modes_(modes) {
    terms_.emplace(Occupation{}, Amplitude{1, 0});
}

FockState::FockState(ModeSet modes, std::map<Occupation, Amplitude> terms)
    : modes_(modes), terms_(pruned(std::move(terms))) {
    for (const auto &[occ, amp] : terms_) {
        for (size_t k = 0; k < NUM_MODES; k++) {
            if (occ[k] != 0 && !modes_.contains(ModeId::from_index(k))) {
                throw std::invalid_argument("occupied mode " + ModeId::from_index(k).str() + " is outside the state's mode set");
            }
        }
    }
}

FockState FockState::vacuum(ModeSet modes) {
    return FockState(modes);
}

FockState FockState::number_state(const Occupation &occ, ModeSet modes) {
    return FockState(modes, {{occ, Amplitude{1, 0}}});
}

Amplitude FockState::amplitude(const Occupation &occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Amplitude{} : it->second;
}

double FockState::norm_squared() const {
    double total = 0;
    for (const auto &[occ, amp] : terms_) {
        total += std::norm(amp);
    }
    return total;
}

double FockState::norm() const {
    return std::sqrt(norm_squared());
}

FockState FockState::normalized() const {
    double n = norm();
    if (n == 0) {
        throw std::domain_error("cannot normalize the zero state");
    }
    return *this * Amplitude{1 / n, 0};
}

FockState FockState::photon_number_sector(size_t photons) const {
    std::map<Occupation, Amplitude> kept;
    for (const auto &[occ, amp] : terms_) {
        if (total_photons(occ) == photons) {
            kept.emplace(occ, amp);
        }
    }
    return FockState(modes_, std::move(kept));
}

FockState FockState::operator*(Amplitude scale) const {
    std::map<Occupation, Amplitude> out;
    for (const auto &[occ, amp] : terms_) {
        out.emplace(occ, amp * scale);
    }
    return FockState(modes_, std::move(out));
}

FockState FockState::operator+(const FockState &other) const {
    if (!(modes_ == other.modes_)) {
        throw std::invalid_argument("cannot add states over different mode sets");
    }
    auto out = terms_;
    for (const auto &[occ, amp] : other.terms_) {
        accumulate(out, occ, amp);
    }
    return FockState(modes_, std::move(out));
}

FockState FockState::operator-(const FockState &other) const {
    return *this + other * Amplitude{-1, 0};
}

ModeUnitary::ModeUnitary(std::vector<ModeId> modes, Eigen::MatrixXcd matrix)
    : modes_(std::move(modes)), matrix_(std::move(matrix)) {
    auto n = static_cast<Eigen::Index>(modes_.size());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw std::invalid_argument("mode unitary matrix shape does not match its mode list");
    }
    std::vector<ModeId> sorted = modes_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("mode unitary lists a mode twice");
    }
    Eigen::MatrixXcd defect = matrix_ * matrix_.adjoint() - Eigen::MatrixXcd::Identity(n, n);
    if (n > 0 && defect.cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("mode transformation is not unitary");
    }
}

ModeUnitary ModeUnitary::identity(std::vector<ModeId> modes) {
    auto n = static_cast<Eigen::Index>(modes.size());
    return ModeUnitary(std::move(modes), Eigen::MatrixXcd::Identity(n, n));
}

ModeUnitary ModeUnitary::embedded(const std::vector<ModeId> &modes) const {
    auto n = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
    std::vector<Eigen::Index> pos(modes_.size());
    for (size_t k = 0; k < modes_.size(); k++) {
        auto it = std::find(modes.begin(), modes.end(), modes_[k]);
        if (it == modes.end()) {
            throw std::invalid_argument("embedding target lacks mode " + modes_[k].str());
        }
        pos[k] = it - modes.begin();
    }
    for (size_t i = 0; i < modes_.size(); i++) {
        for (size_t j = 0; j < modes_.size(); j++) {
            m(pos[i], pos[j]) = matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return ModeUnitary(modes, std::move(m));
}

ModeUnitary compose(const ModeUnitary &second, const ModeUnitary &first) {
    std::vector<ModeId> all = first.modes();
    for (auto m : second.modes()) {
        if (std::find(all.begin(), all.end(), m) == all.end()) {
            all.push_back(m);
        }
    }
    auto a = first.embedded(all);
    auto b = second.embedded(all);
    return ModeUnitary(all, b.matrix() * a.matrix());
}

FockState apply_creation(const FockState &state, ModeId mode) {
    size_t k = mode.index();
    std::map<Occupation, Amplitude> out;
    for (const auto &[occ, amp] : state.terms()) {
        Occupation next = occ;
        next[k]++;
        out.emplace(next, amp * std::sqrt(static_cast<double>(next[k])));
    }
    return FockState(state.modes().with(mode), std::move(out));
}

FockState apply_annihilation(const FockState &state, ModeId mode) {
    size_t k = mode.index();
    std::map<Occupation, Amplitude> out;
    for (const auto &[occ, amp] : state.terms()) {
        if (occ[k] == 0) {
            continue;
        }
        Occupation next = occ;
        next[k]--;
        out.emplace(next, amp * std::sqrt(static_cast<double>(occ[k])));
    }
    return FockState(state.modes(), std::move(out));
}

Amplitude inner_product(const FockState &x, const FockState &y) {
    if (!(x.modes() == y.modes())) {
        throw std::invalid_argument("inner product of states over different mode sets");
    }
    Amplitude total{};
    const auto &small = x.size() <= y.size() ? x.terms() : y.terms();
    const auto &large = x.size() <= y.size() ? y.terms() : x.terms();
    for (const auto &[occ, amp] : small) {
        auto it = large.find(occ);
        if (it != large.end()) {
            total += std::conj(x.amplitude(occ)) * y.amplitude(occ);
        }
    }
    return total;
}

FockState apply_mode_unitary(const FockState &state, const ModeUnitary &u) {
    for (auto m : u.modes()) {
        if (!state.modes().contains(m)) {
            throw std::invalid_argument("mode " + m.str() + " of the transformation is not part of the state");
        }
    }

    // Image of each transformed creation operator, as (global index, coefficient) pairs.
    const auto &mat = u.matrix();
    std::vector<std::vector<std::pair<size_t, Amplitude>>> image(NUM_MODES);
    std::vector<bool> transformed(NUM_MODES, false);
    for (size_t i = 0; i < u.modes().size(); i++) {
        size_t src = u.modes()[i].index();
        transformed[src] = true;
        for (size_t j = 0; j < u.modes().size(); j++) {
            Amplitude c = mat(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
            if (std::abs(c) > 0) {
                image[src].emplace_back(u.modes()[j].index(), c);
            }
        }
    }

    std::map<Occupation, Amplitude> out;
    for (const auto &[occ, amp] : state.terms()) {
        // Monomial coefficients of the product of creation operators.
        Occupation fixed = occ;
        for (size_t k = 0; k < NUM_MODES; k++) {
            if (transformed[k]) {
                fixed[k] = 0;
            }
        }
        std::map<Occupation, Amplitude> poly{{fixed, amp / sqrt_factorial_product(occ)}};
        for (size_t k = 0; k < NUM_MODES; k++) {
            if (!transformed[k]) {
                continue;
            }
            for (uint8_t rep = 0; rep < occ[k]; rep++) {
                std::map<Occupation, Amplitude> next;
                for (const auto &[mono, coef] : poly) {
                    for (const auto &[dst, c] : image[k]) {
                        Occupation m = mono;
                        m[dst]++;
                        accumulate(next, m, coef * c);
                    }
                }
                poly = std::move(next);
            }
        }
        for (const auto &[mono, coef] : poly) {
            accumulate(out, mono, coef * sqrt_factorial_product(mono));
        }
    }
    return FockState(state.modes(), std::move(out));
}

}  // namespace pdcfilter
