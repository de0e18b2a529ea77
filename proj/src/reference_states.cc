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

#include "pdcfilter/reference_states.h"

#include <array>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>

namespace pdcfilter {

namespace {

using S = Spatial;

size_t index_of(std::string_view ket) {
    size_t i = 0;
    for (char c : ket) {
        i = (i << 1) | (c == 'V' ? 1 : 0);
    }
    return i;
}

Eigen::VectorXcd superposition(size_t k, std::initializer_list<std::pair<std::string_view, double>> terms) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size_t{1} << k));
    for (const auto &[ket, c] : terms) {
        v(static_cast<Eigen::Index>(index_of(ket))) += c;
    }
    return v;
}

Eigen::VectorXcd kron(const Eigen::VectorXcd &x, const Eigen::VectorXcd &y) {
    Eigen::VectorXcd out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); i++) {
        out.segment(i * y.size(), y.size()) = x(i) * y;
    }
    return out;
}

const double R2 = std::sqrt(0.5);
const double R3 = std::sqrt(1.0 / 3.0);

Eigen::VectorXcd epr() {
    return superposition(2, {{"HV", R2}, {"VH", R2}});
}
Eigen::VectorXcd w3() {
    return superposition(3, {{"HHV", R3}, {"HVH", R3}, {"VHH", R3}});
}
Eigen::VectorXcd w3bar() {
    return superposition(3, {{"VVH", R3}, {"VHV", R3}, {"HVV", R3}});
}
Eigen::VectorXcd ghz4p() {
    return superposition(4, {{"HHVV", R2}, {"VVHH", R2}});
}
Eigen::VectorXcd ghz6m() {
    return superposition(6, {{"HHHVVV", R2}, {"VVVHHH", -R2}});
}

constexpr std::array<std::string_view, 8> NAMES = {"PSI2", "PSI4", "PSI6", "EPR", "GHZ4P", "GHZ6M", "W3", "W3BAR"};

}  // namespace

std::string_view reference_name(ReferenceLabel label) {
    return NAMES[static_cast<size_t>(label)];
}

ReferenceLabel parse_reference(std::string_view name) {
    for (size_t k = 0; k < NAMES.size(); k++) {
        if (NAMES[k] == name) {
            return static_cast<ReferenceLabel>(k);
        }
    }
    throw std::invalid_argument("unknown reference state '" + std::string(name) + "'");
}

ReferenceLabel invariant_state_for_order(int order) {
    switch (order) {
        case 1:
            return ReferenceLabel::PSI2;
        case 2:
            return ReferenceLabel::PSI4;
        case 3:
            return ReferenceLabel::PSI6;
        default:
            throw std::invalid_argument("no invariant state for order " + std::to_string(order));
    }
}

ReferenceState make_reference(ReferenceLabel label) {
    switch (label) {
        case ReferenceLabel::PSI2:
            return {label, QubitRegister({S::b, S::d}, superposition(2, {{"HV", R2}, {"VH", -R2}}))};
        case ReferenceLabel::PSI4:
            return {label,
                    QubitRegister({S::a, S::b, S::d, S::e}, std::sqrt(2.0 / 3.0) * ghz4p() - R3 * kron(epr(), epr()))};
        case ReferenceLabel::PSI6:
            return {label,
                    QubitRegister({S::a, S::b, S::c, S::d, S::e, S::f},
                                  R2 * ghz6m() + 0.5 * (kron(w3bar(), w3()) - kron(w3(), w3bar())))};
        case ReferenceLabel::EPR:
            return {label, QubitRegister({S::a, S::d}, epr())};
        case ReferenceLabel::GHZ4P:
            return {label, QubitRegister({S::a, S::b, S::d, S::e}, ghz4p())};
        case ReferenceLabel::GHZ6M:
            return {label, QubitRegister({S::a, S::b, S::c, S::d, S::e, S::f}, ghz6m())};
        case ReferenceLabel::W3:
            return {label, QubitRegister({S::a, S::b, S::c}, w3())};
        case ReferenceLabel::W3BAR:
            return {label, QubitRegister({S::d, S::e, S::f}, w3bar())};
    }
    throw std::invalid_argument("unknown reference label");
}

double fidelity(const QubitRegister &x, const QubitRegister &y) {
    if (x.dimension() != y.dimension()) {
        throw std::invalid_argument("fidelity of registers with different sizes");
    }
    return std::min(1.0, std::norm(x.amplitudes().dot(y.amplitudes())));
}

double invariance_defect(const QubitRegister &state, const Eigen::Matrix2cd &u) {
    if ((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("invariance test needs a unitary");
    }
    const size_t k = state.num_qubits();
    const Eigen::VectorXcd &psi = state.amplitudes();
    Eigen::VectorXcd v = psi;
    const auto dim = static_cast<size_t>(v.size());
    for (size_t q = 0; q < k; q++) {
        const size_t stride = size_t{1} << (k - 1 - q);
        for (size_t i = 0; i < dim; i++) {
            if (i & stride) {
                continue;
            }
            auto i0 = static_cast<Eigen::Index>(i);
            auto i1 = static_cast<Eigen::Index>(i | stride);
            Amplitude x0 = v(i0);
            Amplitude x1 = v(i1);
            v(i0) = u(0, 0) * x0 + u(0, 1) * x1;
            v(i1) = u(1, 0) * x0 + u(1, 1) * x1;
        }
    }
    return 1 - std::abs(psi.dot(v));
}

}  // namespace pdcfilter
