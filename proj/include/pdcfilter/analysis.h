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

#ifndef PDCFILTER_ANALYSIS_H
#define PDCFILTER_ANALYSIS_H

#include <array>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdcfilter/measurement.h"

namespace pdcfilter {

/// Raised when a computation is well-posed as a request but numerically fails
/// (singular fit, empty post-selection).
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct CorrelationRecord {
    std::vector<double> settings;
    double value = 0;
    double sigma = 0;
};

// Correlation functions of the invariant states for analyzers in the x-z plane.
// Angles are given in mode order (a0 side first, then b0 side).

/// -cos(theta_b - theta_d).
double e2_theory(double theta_b, double theta_d);

/// (2/3) cos(ta + tb - td - te) + (1/3) cos(ta - tb) cos(td - te).
double e4_theory(double theta_a, double theta_b, double theta_d, double theta_e);

/// -(1/2) cos(ta + tb + tc - td - te - tf) - (1/18) sum cos(ta +- tb +- tc +- td +- te +- tf)
///
/// The sum runs over the nine sign patterns of (tb..tf) with exactly two plus
/// signs, leaving out (+, +, -, -, -), which is the first term's pattern.
double e6_theory(std::span<const double, 6> thetas);

/// The nine (tb..tf) sign patterns summed in e6_theory.
const std::vector<std::array<int, 5>> &e6_sign_patterns();

/// Dispatches on the number of angles (2, 4 or 6).
double invariant_correlation(std::span<const double> thetas);

/// Expectation of the Pauli product along `axes` (one of x, y, z per qubit).
/// Throws std::invalid_argument on a length mismatch.
double tensor_component(const QubitRegister &state, std::string_view axes);

/// Sum of squares of the x..x, y..y and z..z components; > 1 witnesses entanglement.
double entanglement_indicator(const std::array<double, 3> &components);

/// Sum of squares of two components; > 1 excludes local realistic models.
double bell_indicator(double first, double second);

/// (value - threshold) / sigma.
double violation_sigmas(double value, double sigma, double threshold = 1.0);

struct PoissonEstimate {
    double value = 0;
    double sigma = 0;
};

/// E = sum(sign * n) / N, with sigma from first-order propagation of
/// independent Poisson counts. All counts zero yields (0, 0); a single
/// populated outcome yields sigma = 0.
PoissonEstimate propagate_poisson(std::span<const uint64_t> counts, std::span<const int> signs);

/// Convenience: the same over coincidence records, using the product of outcome signs.
PoissonEstimate propagate_poisson(std::span<const CountRecord> records);

struct FitPoint {
    double theta = 0;
    double value = 0;
    double sigma = 0;
};

/// amplitude * cos(theta - phase) + offset.
struct SineFit {
    double amplitude = 0;
    double phase = 0;
    double offset = 0;
    /// Standard error of the amplitude from the fit covariance (0 for unweighted fits).
    double amplitude_sigma = 0;

    double operator()(double theta) const;
};

/// Least squares of A cos(theta - phi) + c, solved linearly in (A cos phi, A sin phi, c).
///
/// Weights are 1/sigma^2 when every sigma is positive; all-zero sigmas give an
/// unweighted fit. Requires at least four points spanning more than pi.
/// Throws NumericalError for ill-posed or singular input.
SineFit sine_fit(std::span<const FitPoint> points);

/// Fit for correlation values estimated from `shots` events per point.
///
/// The first pass weights by the given sigmas (floored at 1/shots). The second
/// pass re-derives each sigma from the first-pass curve, sqrt((1 - E^2)/shots),
/// which removes the bias of weighting by noisy per-point sigmas.
SineFit sine_fit_counting(std::span<const FitPoint> points, uint64_t shots);

struct WitnessReport {
    std::map<std::string, double> components;
    std::map<std::string, double> sigmas;
    double indicator = 0;
    double indicator_sigma = 0;
    double bell_value = 0;
    double bell_sigma = 0;
    /// Infinite when the sigmas are zero (exact evaluation).
    double sigmas_violated = 0;
    double bell_sigmas_violated = 0;
};

/// Builds the report from the x..x, y..y, z..z components and their sigmas.
/// The Bell value uses the x..x and y..y components.
WitnessReport make_witness_report(
    size_t num_qubits, const std::array<double, 3> &components, const std::array<double, 3> &sigmas);

}  // namespace pdcfilter

#endif
