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

#include "pdcfilter/spectral_model.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pdcfilter {

namespace {

void check_ratio(double r) {
    if (!(r >= 0) || !std::isfinite(r)) {
        throw std::invalid_argument("bandwidth ratio must be finite and non-negative");
    }
}

}  // namespace

void SpectralConfig::validate() const {
    if (!(sigma_f > 0) || !(sigma_p > 0)) {
        throw std::invalid_argument("bandwidths must be positive");
    }
}

double SpectralConfig::ratio() const {
    validate();
    return sigma_f / sigma_p;
}

double v2_temp(double r) {
    check_ratio(r);
    return 1.0;
}

double v4_temp(double r) {
    check_ratio(r);
    const double r2 = r * r;
    return std::sqrt(1 + 2 * r2) / (1 + r2);
}

double v6_temp(double r) {
    check_ratio(r);
    const double r2 = r * r;
    return (1 + 2 * r2) / ((1 + r2 / 2) * (1 + 3 * r2 / 2));
}

double max_visibility(int order, double r) {
    switch (order) {
        case 1:
            return v2_temp(r);
        case 2:
            return v4_temp(r);
        case 3:
            return v6_temp(r);
        default:
            throw std::invalid_argument("no visibility model for order " + std::to_string(order));
    }
}

double r_from_wavelength_bandwidths(double delta_lambda_f, double delta_lambda_p) {
    if (!(delta_lambda_f > 0) || !(delta_lambda_p > 0)) {
        throw std::invalid_argument("wavelength bandwidths must be positive");
    }
    return delta_lambda_f / (4 * delta_lambda_p);
}

double degrade_correlation(double e_ideal, double visibility) {
    if (!(visibility >= 0 && visibility <= 1)) {
        throw std::invalid_argument("visibility must lie in [0, 1]");
    }
    return visibility * e_ideal;
}

}  // namespace pdcfilter
