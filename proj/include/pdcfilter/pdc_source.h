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

#ifndef PDCFILTER_PDC_SOURCE_H
#define PDCFILTER_PDC_SOURCE_H

#include <vector>

#include "pdcfilter/fock.h"

namespace pdcfilter {

/// Highest emission order supported (three pairs, six photons).
constexpr int MAX_PDC_ORDER = 3;

/// Type-II down-conversion into the two source fibres a0 and b0.
struct PdcConfig {
    /// Coupling; grows with pump power, nonlinearity and crystal length.
    Amplitude alpha{0.1, 0};
    int max_order = MAX_PDC_ORDER;

    void validate() const;
};

/// The normalized n-pair emission (a0H^dag b0V^dag - a0V^dag b0H^dag)^n |0>.
/// Throws std::invalid_argument unless 1 <= order <= 3.
FockState pdc_term(int order);

/// Sum over n <= max_order of (-i alpha)^n / n! times the n-pair term, normalized.
FockState full_pdc_state(const PdcConfig &cfg);

enum class EmissionModel { bosonic, distinguishable };

/// Probabilities of the polarization patterns of an order-n emission, indexed
/// by the number of V photons in a0 (0..n).
///
/// `bosonic` squares the pdc_term amplitudes. `distinguishable` counts n
/// independent pair emissions without stimulated-emission factors, which
/// gives binomial weights.
std::vector<double> emission_weights(int order, EmissionModel model);

}  // namespace pdcfilter

#endif
