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

#ifndef PDCFILTER_SPECTRAL_MODEL_H
#define PDCFILTER_SPECTRAL_MODEL_H

namespace pdcfilter {

/// Gaussian filter and pump profiles, exp(-((w0 - w) / (2 sigma))^2), with
/// phase matching w_pump = w1 + w2 and filters centred at half the pump frequency.
struct SpectralConfig {
    /// Filter FWHM bandwidth, angular frequency units.
    double sigma_f = 1;
    /// Pump FWHM bandwidth, same units.
    double sigma_p = 1;

    void validate() const;
    double ratio() const;
};

/// Two-photon visibility; pairs from a single emission carry no spectral which-pair information.
double v2_temp(double r);

/// sqrt(1 + 2 r^2) / (1 + r^2).
double v4_temp(double r);

/// (1 + 2 r^2) / ((1 + r^2 / 2)(1 + 3 r^2 / 2)).
double v6_temp(double r);

/// Maximal visibility for emission order 1, 2 or 3.
double max_visibility(int order, double r);

/// Delta lambda_f / (4 Delta lambda_p); both bandwidths in the same length unit.
double r_from_wavelength_bandwidths(double delta_lambda_f, double delta_lambda_p);

/// Uniform contrast reduction V * E.
double degrade_correlation(double e_ideal, double visibility);

}  // namespace pdcfilter

#endif
