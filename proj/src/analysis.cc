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

#include "pdcfilter/analysis.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

namespace pdcfilter {

double e2_theory(double theta_b, double theta_d) {
    return -std::cos(theta_b - theta_d);
}

double e4_theory(double theta_a, double theta_b, double theta_d, double theta_e) {
    return 2.0 / 3.0 * std::cos(theta_a + theta_b - theta_d - theta_e) +
           1.0 / 3.0 * std::cos(theta_a - theta_b) * std::cos(theta_d - theta_e);
}

const std::vector<std::array<int, 5>> &e6_sign_patterns() {
    static const std::vector<std::array<int, 5>> patterns = [] {
        std::vector<std::array<int, 5>> out;
        const std::array<int, 5> leading{1, 1, -1, -1, -1};
        for (unsigned mask = 0; mask < 32; mask++) {
            if (std::popcount(mask) != 2) {
                continue;
            }
            std::array<int, 5> s{};
            for (int k = 0; k < 5; k++) {
                s[static_cast<size_t>(k)] = (mask >> (4 - k)) & 1 ? 1 : -1;
            }
            if (s != leading) {
                out.push_back(s);
            }
        }
        return out;
    }();
    return patterns;
}

double e6_theory(std::span<const double, 6> t) {
    double e = -0.5 * std::cos(t[0] + t[1] + t[2] - t[3] - t[4] - t[5]);
    for (const auto &s : e6_sign_patterns()) {
        double arg = t[0];
        for (size_t k = 0; k < 5; k++) {
            arg += s[k] * t[k + 1];
        }
        e -= std::cos(arg) / 18.0;
    }
    return e;
}

double invariant_correlation(std::span<const double> t) {
    switch (t.size()) {
        case 2:
            return e2_theory(t[0], t[1]);
        case 4:
            return e4_theory(t[0], t[1], t[2], t[3]);
        case 6:
            return e6_theory(t.first<6>());
        default:
            throw std::invalid_argument("invariant correlations exist for 2, 4 or 6 qubits");
    }
}

double tensor_component(const QubitRegister &state, std::string_view axes) {
    const size_t k = state.num_qubits();
    if (axes.size() != k) {
        throw std::invalid_argument("axis string length must equal the number of qubits");
    }
    // <psi| P |psi> with P = P_0 (x) ... (x) P_{k-1}; P maps basis i to phase * (i ^ flips).
    size_t flips = 0;
    for (size_t q = 0; q < k; q++) {
        char a = axes[q];
        if (a != 'x' && a != 'y' && a != 'z') {
            throw std::invalid_argument(std::string("unknown Pauli axis '") + a + "'");
        }
        if (a != 'z') {
            flips |= size_t{1} << (k - 1 - q);
        }
    }
    const auto &psi = state.amplitudes();
    Amplitude total{};
    for (size_t i = 0; i < state.dimension(); i++) {
        Amplitude phase{1, 0};
        for (size_t q = 0; q < k; q++) {
            bool bit = (i >> (k - 1 - q)) & 1;
            switch (axes[q]) {
                case 'y':
                    phase *= bit ? Amplitude{0, -1} : Amplitude{0, 1};
                    break;
                case 'z':
                    phase *= bit ? -1.0 : 1.0;
                    break;
                default:
                    break;
            }
        }
        total += std::conj(psi(static_cast<Eigen::Index>(i ^ flips))) * phase * psi(static_cast<Eigen::Index>(i));
    }
    return total.real();
}

double entanglement_indicator(const std::array<double, 3> &c) {
    return c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
}

double bell_indicator(double first, double second) {
    return first * first + second * second;
}

double violation_sigmas(double value, double sigma, double threshold) {
    if (sigma < 0) {
        throw std::invalid_argument("sigma must be non-negative");
    }
    if (value == threshold) {
        return 0;
    }
    if (sigma == 0) {
        return std::copysign(std::numeric_limits<double>::infinity(), value - threshold);
    }
    return (value - threshold) / sigma;
}

PoissonEstimate propagate_poisson(std::span<const uint64_t> counts, std::span<const int> signs) {
    if (counts.size() != signs.size()) {
        throw std::invalid_argument("one sign per count is required");
    }
    double total = 0;
    double weighted = 0;
    for (size_t i = 0; i < counts.size(); i++) {
        total += static_cast<double>(counts[i]);
        weighted += signs[i] * static_cast<double>(counts[i]);
    }
    if (total == 0) {
        return {};
    }
    const double e = weighted / total;
    // dE/dn_i = (s_i - E) / N and Var(n_i) = n_i.
    double var = 0;
    for (size_t i = 0; i < counts.size(); i++) {
        double d = (signs[i] - e) / total;
        var += d * d * static_cast<double>(counts[i]);
    }
    return {e, std::sqrt(var)};
}

PoissonEstimate propagate_poisson(std::span<const CountRecord> records) {
    std::vector<uint64_t> counts;
    std::vector<int> signs;
    for (const auto &r : records) {
        int s = 1;
        for (int o : r.pattern.outcomes) {
            s *= o;
        }
        counts.push_back(r.counts);
        signs.push_back(s);
    }
    return propagate_poisson(counts, signs);
}

double SineFit::operator()(double theta) const {
    return amplitude * std::cos(theta - phase) + offset;
}

namespace {

SineFit solve_fit(std::span<const FitPoint> points, std::span<const double> weights, bool weighted) {
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd design(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; i++) {
        const auto &p = points[static_cast<size_t>(i)];
        const double w = std::sqrt(weights[static_cast<size_t>(i)]);
        design(i, 0) = w * std::cos(p.theta);
        design(i, 1) = w * std::sin(p.theta);
        design(i, 2) = w;
        rhs(i) = w * p.value;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < 3) {
        throw NumericalError("sine fit design matrix is singular");
    }
    Eigen::Vector3d x = qr.solve(rhs);
    SineFit fit;
    fit.amplitude = std::hypot(x(0), x(1));
    fit.phase = std::atan2(x(1), x(0));
    fit.offset = x(2);
    if (weighted && fit.amplitude > 0) {
        Eigen::Matrix3d cov = (design.transpose() * design).inverse();
        Eigen::Vector3d g(x(0) / fit.amplitude, x(1) / fit.amplitude, 0);
        fit.amplitude_sigma = std::sqrt(std::max(0.0, g.dot(cov * g)));
    }
    if (!std::isfinite(fit.amplitude) || !std::isfinite(fit.offset)) {
        throw NumericalError("sine fit produced non-finite parameters");
    }
    return fit;
}

void check_fit_input(std::span<const FitPoint> points) {
    if (points.size() < 4) {
        throw NumericalError("sine fit needs at least four points");
    }
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(), [](const FitPoint &a, const FitPoint &b) {
        return a.theta < b.theta;
    });
    if (!(hi->theta - lo->theta > std::numbers::pi)) {
        throw NumericalError("sine fit points must span more than pi");
    }
    for (const auto &p : points) {
        if (!std::isfinite(p.theta) || !std::isfinite(p.value) || !(p.sigma >= 0)) {
            throw NumericalError("sine fit input contains invalid values");
        }
    }
}

}  // namespace

SineFit sine_fit(std::span<const FitPoint> points) {
    check_fit_input(points);
    size_t zero = std::count_if(points.begin(), points.end(), [](const FitPoint &p) {
        return p.sigma == 0;
    });
    if (zero != 0 && zero != points.size()) {
        throw NumericalError("sine fit needs all sigmas positive or all zero");
    }
    const bool weighted = zero == 0;
    std::vector<double> w(points.size(), 1.0);
    if (weighted) {
        for (size_t i = 0; i < points.size(); i++) {
            w[i] = 1 / (points[i].sigma * points[i].sigma);
        }
    }
    return solve_fit(points, w, weighted);
}

SineFit sine_fit_counting(std::span<const FitPoint> points, uint64_t shots) {
    if (shots == 0) {
        throw std::invalid_argument("counting fit needs a positive shot count");
    }
    check_fit_input(points);
    const double n = static_cast<double>(shots);
    const double floor = 1 / n;
    std::vector<double> w(points.size());
    for (size_t i = 0; i < points.size(); i++) {
        double s = std::max(points[i].sigma, floor);
        w[i] = 1 / (s * s);
    }
    auto first = solve_fit(points, w, true);
    for (size_t i = 0; i < points.size(); i++) {
        double m = std::clamp(first(points[i].theta), -1.0, 1.0);
        double s = std::max(std::sqrt((1 - m * m) / n), floor);
        w[i] = 1 / (s * s);
    }
    return solve_fit(points, w, true);
}

WitnessReport make_witness_report(
    size_t num_qubits, const std::array<double, 3> &components, const std::array<double, 3> &sigmas) {
    WitnessReport r;
    const std::array<char, 3> axes{'x', 'y', 'z'};
    for (size_t k = 0; k < 3; k++) {
        std::string key(num_qubits, axes[k]);
        r.components[key] = components[k];
        r.sigmas[key] = sigmas[k];
    }
    r.indicator = entanglement_indicator(components);
    double var = 0;
    for (size_t k = 0; k < 3; k++) {
        var += std::pow(2 * components[k] * sigmas[k], 2);
    }
    r.indicator_sigma = std::sqrt(var);
    r.bell_value = bell_indicator(components[0], components[1]);
    r.bell_sigma = std::hypot(2 * components[0] * sigmas[0], 2 * components[1] * sigmas[1]);
    r.sigmas_violated = violation_sigmas(r.indicator, r.indicator_sigma);
    r.bell_sigmas_violated = violation_sigmas(r.bell_value, r.bell_sigma);
    return r;
}

}  // namespace pdcfilter
