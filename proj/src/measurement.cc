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

#include "pdcfilter/measurement.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pdcfilter {

namespace {

// Applies a 2x2 matrix to qubit q of a k-qubit vector.
void apply_local(Eigen::VectorXcd &v, size_t k, size_t q, const Eigen::Matrix2cd &m) {
    const size_t stride = size_t{1} << (k - 1 - q);
    const auto dim = static_cast<size_t>(v.size());
    for (size_t i = 0; i < dim; i++) {
        if (i & stride) {
            continue;
        }
        auto i0 = static_cast<Eigen::Index>(i);
        auto i1 = static_cast<Eigen::Index>(i | stride);
        Amplitude x0 = v(i0);
        Amplitude x1 = v(i1);
        v(i0) = m(0, 0) * x0 + m(0, 1) * x1;
        v(i1) = m(1, 0) * x0 + m(1, 1) * x1;
    }
}

std::vector<double> probabilities_of(const Eigen::VectorXcd &v) {
    std::vector<double> p(static_cast<size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); i++) {
        p[static_cast<size_t>(i)] = std::norm(v(i));
    }
    return p;
}

Eigen::Matrix2cd pauli_basis_change(char axis) {
    const double r = std::sqrt(0.5);
    const Amplitude i{0, 1};
    Eigen::Matrix2cd m;
    switch (axis) {
        case 'x':
        case 'X':
            m << r, r, r, -r;
            return m;
        case 'y':
        case 'Y':
            m << r, -i * r, r, i * r;
            return m;
        case 'z':
        case 'Z':
            return Eigen::Matrix2cd::Identity();
        default:
            throw std::invalid_argument(std::string("unknown Pauli axis '") + axis + "'");
    }
}

}  // namespace

QubitRegister::QubitRegister(std::vector<Spatial> modes, Eigen::VectorXcd amplitudes)
    : modes_(std::move(modes)), amplitudes_(std::move(amplitudes)) {
    if (modes_.size() >= 16) {
        throw std::invalid_argument("too many qubits");
    }
    if (static_cast<size_t>(amplitudes_.size()) != (size_t{1} << modes_.size())) {
        throw std::invalid_argument("register length must be 2^k");
    }
    if (std::abs(amplitudes_.squaredNorm() - 1) > 1e-12) {
        throw std::invalid_argument("register state is not normalized");
    }
}

QubitRegister QubitRegister::phase_fixed() const {
    for (Eigen::Index i = 0; i < amplitudes_.size(); i++) {
        double mag = std::abs(amplitudes_(i));
        if (mag > 1e-12) {
            Eigen::VectorXcd v = amplitudes_ * (std::conj(amplitudes_(i)) / mag);
            v(i) = mag;
            return QubitRegister(modes_, std::move(v));
        }
    }
    return *this;
}

std::string QubitRegister::basis_label(size_t basis) const {
    std::string s;
    const size_t k = modes_.size();
    for (size_t q = 0; q < k; q++) {
        s += (basis >> (k - 1 - q)) & 1 ? 'V' : 'H';
    }
    return s;
}

PostSelection postselect(const FockState &state, std::span<const Spatial> modes) {
    const size_t k = modes.size();
    if (k < 2 || k % 2 != 0) {
        throw std::invalid_argument("post-selection needs an even number (>= 2) of modes");
    }
    std::vector<Spatial> sorted(modes.begin(), modes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("post-selection modes must be distinct");
    }
    for (auto s : sorted) {
        if (s == Spatial::a0 || s == Spatial::b0) {
            throw std::invalid_argument("post-selection acts on the output modes a..f");
        }
    }

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size_t{1} << k));
    double probability = 0;
    for (const auto &[occ, amp] : state.terms()) {
        if (total_photons(occ) != k) {
            continue;
        }
        size_t basis = 0;
        bool match = true;
        for (size_t q = 0; q < k && match; q++) {
            auto h = occ[ModeId{sorted[q], Pol::H}.index()];
            auto vv = occ[ModeId{sorted[q], Pol::V}.index()];
            match = h + vv == 1;
            basis = (basis << 1) | vv;
        }
        if (!match) {
            continue;
        }
        v(static_cast<Eigen::Index>(basis)) += amp;
        probability += std::norm(amp);
    }
    probability /= state.norm_squared();
    if (!(probability > 1e-300) || v.norm() == 0) {
        return {0.0, std::nullopt};
    }
    v /= v.norm();
    return {probability, QubitRegister(std::move(sorted), std::move(v)).phase_fixed()};
}

std::vector<double> outcome_distribution(const QubitRegister &state, std::span<const double> thetas) {
    const size_t k = state.num_qubits();
    if (thetas.size() != k) {
        throw std::invalid_argument("one analyzer angle per qubit is required");
    }
    Eigen::VectorXcd v = state.amplitudes();
    for (size_t q = 0; q < k; q++) {
        apply_local(v, k, q, analyzer_block(thetas[q]));
    }
    return probabilities_of(v);
}

std::vector<double> thetas_for(const QubitRegister &state, std::span<const AnalyzerSetting> settings) {
    std::vector<double> thetas;
    for (auto m : state.modes()) {
        auto it = std::find_if(settings.begin(), settings.end(), [m](const AnalyzerSetting &a) {
            return a.mode == m;
        });
        if (it == settings.end()) {
            throw std::invalid_argument("no analyzer setting for mode " + std::string(spatial_name(m)));
        }
        thetas.push_back(it->theta);
    }
    return thetas;
}

double outcome_probability(const QubitRegister &state, std::span<const AnalyzerSetting> settings, std::span<const int> outcomes) {
    const size_t k = state.num_qubits();
    if (outcomes.size() != k) {
        throw std::invalid_argument("one outcome per qubit is required");
    }
    size_t index = 0;
    for (int o : outcomes) {
        if (o != 1 && o != -1) {
            throw std::invalid_argument("outcomes must be +1 or -1");
        }
        index = (index << 1) | (o < 0 ? 1 : 0);
    }
    return outcome_distribution(state, thetas_for(state, settings))[index];
}

int outcome_sign(size_t outcome) {
    return std::popcount(outcome) % 2 == 0 ? 1 : -1;
}

double correlation_from_state(const QubitRegister &state, std::span<const double> thetas) {
    auto p = outcome_distribution(state, thetas);
    double e = 0;
    for (size_t i = 0; i < p.size(); i++) {
        e += outcome_sign(i) * p[i];
    }
    return e;
}

double correlation_from_state(const QubitRegister &state, std::span<const AnalyzerSetting> settings) {
    return correlation_from_state(state, thetas_for(state, settings));
}

std::vector<double> pauli_outcome_distribution(const QubitRegister &state, std::string_view axes) {
    const size_t k = state.num_qubits();
    if (axes.size() != k) {
        throw std::invalid_argument("one Pauli axis per qubit is required");
    }
    Eigen::VectorXcd v = state.amplitudes();
    for (size_t q = 0; q < k; q++) {
        apply_local(v, k, q, pauli_basis_change(axes[q]));
    }
    return probabilities_of(v);
}

std::vector<uint64_t> sample_counts(std::span<const double> probabilities, uint64_t shots, uint64_t seed) {
    std::mt19937_64 rng(seed);
    const size_t n_out = probabilities.size();
    std::vector<uint64_t> counts(n_out, 0);
    // Suffix sums, so that an outcome with zero probability is never drawn.
    std::vector<double> tail(n_out + 1, 0.0);
    for (size_t i = n_out; i-- > 0;) {
        if (!(probabilities[i] >= 0)) {
            throw std::invalid_argument("probabilities must be non-negative");
        }
        tail[i] = tail[i + 1] + probabilities[i];
    }
    if (n_out == 0 || !(tail[0] > 0)) {
        throw std::invalid_argument("cannot sample from an empty distribution");
    }
    uint64_t remaining = shots;
    for (size_t i = 0; i < n_out && remaining > 0; i++) {
        if (probabilities[i] == 0) {
            continue;
        }
        uint64_t n = remaining;
        if (tail[i + 1] > 0) {
            double p = std::clamp(probabilities[i] / tail[i], 0.0, 1.0);
            std::binomial_distribution<uint64_t> draw(remaining, p);
            n = draw(rng);
        }
        counts[i] = n;
        remaining -= n;
    }
    return counts;
}

std::vector<CountRecord> monte_carlo_counts(
    std::span<const Spatial> modes,
    std::span<const double> thetas,
    std::span<const double> probabilities,
    uint64_t shots,
    uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be positive");
    }
    const size_t k = modes.size();
    if (probabilities.size() != (size_t{1} << k) || thetas.size() != k) {
        throw std::invalid_argument("distribution does not match the number of modes");
    }
    auto counts = sample_counts(probabilities, shots, seed);
    std::vector<CountRecord> records;
    for (size_t i = 0; i < counts.size(); i++) {
        if (counts[i] == 0) {
            continue;
        }
        CountRecord r;
        r.pattern.modes.assign(modes.begin(), modes.end());
        for (size_t q = 0; q < k; q++) {
            r.pattern.outcomes.push_back((i >> (k - 1 - q)) & 1 ? -1 : 1);
        }
        r.settings.assign(thetas.begin(), thetas.end());
        r.counts = counts[i];
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<CountRecord> monte_carlo_counts(
    const QubitRegister &state, std::span<const double> thetas, uint64_t shots, uint64_t seed) {
    auto p = outcome_distribution(state, thetas);
    return monte_carlo_counts(state.modes(), thetas, p, shots, seed);
}

}  // namespace pdcfilter
