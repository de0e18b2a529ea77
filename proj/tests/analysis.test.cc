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

#include <functional>
#include <numeric>

#include <gtest/gtest.h>

#include "pdcfilter/reference_states.h"
#include "test_util.h"

using namespace pdcfilter;
using namespace pdcfilter::testing;

namespace {

constexpr double HALF_PI = std::numbers::pi / 2;
constexpr double TWO_PI = 2 * std::numbers::pi;

QubitRegister ref(ReferenceLabel label) {
    return make_reference(label).state;
}

std::vector<double> random_angles(std::mt19937_64 &rng, size_t n) {
    std::uniform_real_distribution<double> angle(0, TWO_PI);
    std::vector<double> t(n);
    for (auto &x : t) {
        x = angle(rng);
    }
    return t;
}

std::vector<FitPoint> samples(const std::function<double(double)> &f, int n) {
    std::vector<FitPoint> points;
    for (int k = 0; k < n; k++) {
        double theta = TWO_PI * k / n;
        points.push_back({theta, f(theta), 0});
    }
    return points;
}

}  // namespace

TEST(analysis, two_photon_formula) {
    EXPECT_NEAR(e2_theory(HALF_PI, HALF_PI), -1, 1e-15);
    EXPECT_NEAR(e2_theory(0, HALF_PI), 0, 1e-15);
    std::mt19937_64 rng(31);
    auto r = ref(ReferenceLabel::PSI2);
    for (int trial = 0; trial < 25; trial++) {
        auto t = random_angles(rng, 2);
        EXPECT_NEAR(e2_theory(t[0], t[1]), correlation_from_state(r, t), 1e-10);
    }
}

TEST(analysis, four_photon_formula) {
    EXPECT_NEAR(e4_theory(0.4, 0.4, 0.4, 0.4), 1, 1e-15);
    EXPECT_NEAR(e4_theory(HALF_PI, HALF_PI, HALF_PI, HALF_PI), 1, 1e-15);
    std::mt19937_64 rng(37);
    auto r = ref(ReferenceLabel::PSI4);
    for (int trial = 0; trial < 25; trial++) {
        auto t = random_angles(rng, 4);
        EXPECT_NEAR(e4_theory(t[0], t[1], t[2], t[3]), correlation_from_state(r, t), 1e-10);
    }
}

TEST(analysis, six_photon_formula) {
    std::array<double, 6> diagonal;
    diagonal.fill(HALF_PI);
    EXPECT_NEAR(e6_theory(diagonal), -1, 1e-15);
    std::mt19937_64 rng(41);
    auto r = ref(ReferenceLabel::PSI6);
    for (int trial = 0; trial < 25; trial++) {
        auto t = random_angles(rng, 6);
        EXPECT_NEAR(e6_theory(std::span<const double, 6>(t.data(), 6)), correlation_from_state(r, t), 1e-10);
    }
}

TEST(analysis, six_photon_sweep_reaches_unit_extrema) {
    std::array<double, 6> t;
    t.fill(HALF_PI);
    double lo = 1;
    double hi = -1;
    for (int k = 0; k < 360; k++) {
        t[1] = TWO_PI * k / 360;
        double e = e6_theory(t);
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    EXPECT_NEAR(lo, -1, 1e-12);
    EXPECT_NEAR(hi, 1, 1e-12);
}

TEST(analysis, six_photon_sign_patterns) {
    const auto &patterns = e6_sign_patterns();
    EXPECT_EQ(patterns.size(), 9u);
    for (const auto &p : patterns) {
        int plus = 0;
        for (int s : p) {
            EXPECT_TRUE(s == 1 || s == -1);
            plus += s == 1;
        }
        EXPECT_EQ(plus, 2);
        EXPECT_NE(p, (std::array<int, 5>{1, 1, -1, -1, -1}));
    }
}

TEST(analysis, formulas_depend_only_on_differences) {
    // Rotating every analyzer together leaves the invariant correlations unchanged.
    std::mt19937_64 rng(43);
    for (size_t k : {2u, 4u, 6u}) {
        auto t = random_angles(rng, k);
        auto shifted = t;
        for (auto &x : shifted) {
            x += 0.77;
        }
        EXPECT_NEAR(invariant_correlation(t), invariant_correlation(shifted), 1e-12);
    }
    std::vector<double> three = {0, 0, 0};
    EXPECT_THROW(invariant_correlation(three), std::invalid_argument);
}

TEST(analysis, tensor_components) {
    EXPECT_NEAR(tensor_component(ref(ReferenceLabel::PSI2), "zz"), -1, 1e-15);
    EXPECT_NEAR(tensor_component(ref(ReferenceLabel::PSI4), "zzzz"), 1, 1e-15);
    EXPECT_NEAR(tensor_component(ref(ReferenceLabel::PSI6), "xxxxxx"), -1, 1e-14);
    for (auto label : {ReferenceLabel::PSI2, ReferenceLabel::PSI4, ReferenceLabel::PSI6}) {
        auto r = ref(label);
        auto k = r.num_qubits();
        double sign = k % 4 == 0 ? 1 : -1;
        for (char axis : {'x', 'y', 'z'}) {
            EXPECT_NEAR(tensor_component(r, std::string(k, axis)), sign, 1e-14);
        }
    }
    EXPECT_THROW(tensor_component(ref(ReferenceLabel::PSI2), "zzz"), std::invalid_argument);
    EXPECT_THROW(tensor_component(ref(ReferenceLabel::PSI2), "zw"), std::invalid_argument);
}

TEST(analysis, tensor_matches_correlation_at_pauli_settings) {
    // theta = 0 measures sigma_z and theta = pi/2 measures sigma_x.
    auto r = ref(ReferenceLabel::PSI4);
    std::vector<double> mixed = {0, HALF_PI, 0, HALF_PI};
    EXPECT_NEAR(tensor_component(r, "zxzx"), correlation_from_state(r, mixed), 1e-14);
}

TEST(analysis, indicators) {
    EXPECT_NEAR(entanglement_indicator({-1, -1, -1}), 3, 1e-15);
    double v = 0.962;
    EXPECT_NEAR(entanglement_indicator({-v, -v, -v}), 2.776, 0.0005);
    double t = 1 / std::sqrt(3.0);
    EXPECT_NEAR(entanglement_indicator({t, t, t}), 1, 1e-15);
    EXPECT_EQ(bell_indicator(1, 1), 2);
    EXPECT_NEAR(bell_indicator(0.919, 0.919), 1.689, 0.0005);
    EXPECT_EQ(bell_indicator(1, 0), 1);
}

TEST(analysis, violation_sigmas) {
    EXPECT_NEAR(violation_sigmas(2.785, 0.00737), 242, 1);
    EXPECT_EQ(violation_sigmas(1, 0.3), 0);
    EXPECT_NEAR(violation_sigmas(1.52, 0.11), 4.7, 0.05);
    EXPECT_EQ(violation_sigmas(3, 0), std::numeric_limits<double>::infinity());
    EXPECT_EQ(violation_sigmas(0.5, 0), -std::numeric_limits<double>::infinity());
    EXPECT_EQ(violation_sigmas(1, 0), 0);
    EXPECT_THROW(violation_sigmas(1, -1), std::invalid_argument);
}

TEST(analysis, witness_report) {
    auto r = make_witness_report(4, {0.9, 0.8, 0.7}, {0.01, 0.02, 0.03});
    EXPECT_EQ(r.components.at("xxxx"), 0.9);
    EXPECT_EQ(r.sigmas.at("zzzz"), 0.03);
    EXPECT_NEAR(r.indicator, 0.81 + 0.64 + 0.49, 1e-15);
    EXPECT_NEAR(r.bell_value, 0.81 + 0.64, 1e-15);
    double var = std::pow(2 * 0.9 * 0.01, 2) + std::pow(2 * 0.8 * 0.02, 2) + std::pow(2 * 0.7 * 0.03, 2);
    EXPECT_NEAR(r.indicator_sigma, std::sqrt(var), 1e-15);
    EXPECT_NEAR(r.sigmas_violated, (r.indicator - 1) / r.indicator_sigma, 1e-12);
    auto exact = make_witness_report(2, {-1, -1, -1}, {0, 0, 0});
    EXPECT_TRUE(std::isinf(exact.sigmas_violated));
}

TEST(analysis, poisson_propagation) {
    std::vector<uint64_t> counts = {50, 50};
    std::vector<int> signs = {1, -1};
    auto e = propagate_poisson(counts, signs);
    EXPECT_NEAR(e.value, 0, 1e-15);
    EXPECT_NEAR(e.sigma, 0.1, 1e-15);
    std::vector<uint64_t> all_plus = {100, 0};
    auto d = propagate_poisson(all_plus, signs);
    EXPECT_EQ(d.value, 1);
    EXPECT_EQ(d.sigma, 0);
    std::vector<int> short_signs = {1};
    EXPECT_THROW(propagate_poisson(counts, short_signs), std::invalid_argument);
}

TEST(analysis, poisson_sigma_matches_spread) {
    auto r = ref(ReferenceLabel::PSI2);
    std::vector<double> thetas = {0.4, 1.5};
    const int seeds = 100;
    std::vector<double> values;
    double mean_sigma = 0;
    for (int s = 0; s < seeds; s++) {
        auto records = monte_carlo_counts(r, thetas, 20000, static_cast<uint64_t>(1000 + s));
        auto e = propagate_poisson(records);
        values.push_back(e.value);
        mean_sigma += e.sigma / seeds;
    }
    double mean = std::accumulate(values.begin(), values.end(), 0.0) / seeds;
    double var = 0;
    for (double v : values) {
        var += (v - mean) * (v - mean) / (seeds - 1);
    }
    EXPECT_NEAR(std::sqrt(var) / mean_sigma, 1, 0.2);
    EXPECT_NEAR(mean, -std::cos(0.4 - 1.5), 4 * mean_sigma / std::sqrt(seeds));
}

TEST(analysis, fit_of_negative_cosine) {
    auto fit = sine_fit(samples([](double t) { return -std::cos(t); }, 8));
    EXPECT_NEAR(fit.amplitude, 1, 1e-10);
    EXPECT_NEAR(fit.offset, 0, 1e-10);
    EXPECT_NEAR(std::abs(fit.phase), std::numbers::pi, 1e-10);
    EXPECT_EQ(fit.amplitude_sigma, 0);
}

TEST(analysis, fit_roundtrip) {
    auto fit = sine_fit(samples([](double t) { return 0.9 * std::cos(t - 0.3) + 0.05; }, 25));
    EXPECT_NEAR(fit.amplitude, 0.9, 1e-9);
    EXPECT_NEAR(fit.phase, 0.3, 1e-9);
    EXPECT_NEAR(fit.offset, 0.05, 1e-9);
    EXPECT_NEAR(fit(1.1), 0.9 * std::cos(0.8) + 0.05, 1e-9);
}

TEST(analysis, weighted_fit_roundtrip) {
    auto points = samples([](double t) { return 0.5 * std::cos(t + 1.2) - 0.1; }, 12);
    for (size_t i = 0; i < points.size(); i++) {
        points[i].sigma = 0.01 * (1 + static_cast<double>(i % 3));
    }
    auto fit = sine_fit(points);
    EXPECT_NEAR(fit.amplitude, 0.5, 1e-9);
    EXPECT_NEAR(fit.phase, -1.2, 1e-9);
    EXPECT_NEAR(fit.offset, -0.1, 1e-9);
    EXPECT_GT(fit.amplitude_sigma, 0);
}

TEST(analysis, fit_rejects_degenerate_input) {
    auto three = samples([](double t) { return std::cos(t); }, 3);
    EXPECT_THROW(sine_fit(three), NumericalError);
    std::vector<FitPoint> narrow;
    for (int k = 0; k < 10; k++) {
        narrow.push_back({0.1 * k, std::cos(0.1 * k), 0});
    }
    EXPECT_THROW(sine_fit(narrow), NumericalError);
    auto mixed = samples([](double t) { return std::cos(t); }, 8);
    mixed[0].sigma = 0.1;
    EXPECT_THROW(sine_fit(mixed), NumericalError);
    auto nan = samples([](double t) { return std::cos(t); }, 8);
    nan[2].value = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(sine_fit(nan), NumericalError);
    // Two distinct angles repeated cannot determine three parameters.
    std::vector<FitPoint> rank_deficient;
    for (int k = 0; k < 6; k++) {
        double theta = k % 2 == 0 ? 0 : 4.0;
        rank_deficient.push_back({theta, std::cos(theta), 0});
    }
    EXPECT_THROW(sine_fit(rank_deficient), NumericalError);
}

TEST(analysis, counting_fit_is_unbiased) {
    auto r = ref(ReferenceLabel::PSI2);
    const uint64_t shots = 10000;
    const int seeds = 30;
    double sum = 0;
    for (int s = 0; s < seeds; s++) {
        std::vector<FitPoint> points;
        for (int k = 0; k < 16; k++) {
            double theta = TWO_PI * k / 16;
            std::vector<double> t = {theta, HALF_PI};
            auto e = propagate_poisson(monte_carlo_counts(r, t, shots, static_cast<uint64_t>(100 * s + k + 1)));
            points.push_back({theta, e.value, e.sigma});
        }
        auto fit = sine_fit_counting(points, shots);
        EXPECT_NEAR(fit.amplitude, 1, 5 * fit.amplitude_sigma);
        sum += fit.amplitude;
    }
    EXPECT_NEAR(sum / seeds, 1, 0.003);
    std::vector<FitPoint> none;
    EXPECT_THROW(sine_fit_counting(none, 0), std::invalid_argument);
}
