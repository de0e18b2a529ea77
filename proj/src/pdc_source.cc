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

#include "pdcfilter/pdc_source.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pdcfilter {

namespace {

void check_order(int order, int lo) {
    if (order < lo || order > MAX_PDC_ORDER) {
        throw std::invalid_argument(
            "emission order " + std::to_string(order) + " outside [" + std::to_string(lo) + ", " +
            std::to_string(MAX_PDC_ORDER) + "]");
    }
}

/// One application of the pair-creation operator, unnormalized.
FockState emit_pair(const FockState &state) {
    constexpr ModeId a0H{Spatial::a0, Pol::H};
    constexpr ModeId a0V{Spatial::a0, Pol::V};
    constexpr ModeId b0H{Spatial::b0, Pol::H};
    constexpr ModeId b0V{Spatial::b0, Pol::V};
    return apply_creation(apply_creation(state, a0H), b0V) - apply_creation(apply_creation(state, a0V), b0H);
}

double binomial(int n, int k) {
    double r = 1;
    for (int j = 1; j <= k; j++) {
        r = r * (n - k + j) / j;
    }
    return r;
}

}  // namespace

void PdcConfig::validate() const {
    if (!(std::abs(alpha) > 0)) {
        throw std::invalid_argument("PDC coupling must be non-zero");
    }
    check_order(max_order, 1);
}

FockState pdc_term(int order) {
    check_order(order, 1);
    FockState state;
    for (int n = 0; n < order; n++) {
        state = emit_pair(state);
    }
    return state.normalized();
}

FockState full_pdc_state(const PdcConfig &cfg) {
    cfg.validate();
    const Amplitude step = Amplitude{0, -1} * cfg.alpha;
    FockState pairs;
    FockState total = pairs;
    Amplitude coef{1, 0};
    for (int n = 1; n <= cfg.max_order; n++) {
        pairs = emit_pair(pairs);
        coef *= step / static_cast<double>(n);
        total = total + pairs * coef;
    }
    return total.normalized();
}

std::vector<double> emission_weights(int order, EmissionModel model) {
    check_order(order, 2);
    std::vector<double> weights(static_cast<size_t>(order) + 1);
    if (model == EmissionModel::distinguishable) {
        for (int k = 0; k <= order; k++) {
            weights[static_cast<size_t>(k)] = binomial(order, k) / std::pow(2.0, order);
        }
        return weights;
    }
    // Every ket of the normalized n-pair term carries amplitude magnitude 1/sqrt(n + 1).
    std::fill(weights.begin(), weights.end(), 1.0 / (order + 1));
    return weights;
}

}  // namespace pdcfilter
