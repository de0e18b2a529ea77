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

#ifndef PDCFILTER_REFERENCE_STATES_H
#define PDCFILTER_REFERENCE_STATES_H

#include <string_view>

#include "pdcfilter/measurement.h"

namespace pdcfilter {

enum class ReferenceLabel { PSI2, PSI4, PSI6, EPR, GHZ4P, GHZ6M, W3, W3BAR };

std::string_view reference_name(ReferenceLabel label);
ReferenceLabel parse_reference(std::string_view name);

/// The invariant state filtered from an emission of the given order (1, 2, 3).
ReferenceLabel invariant_state_for_order(int order);

struct ReferenceState {
    ReferenceLabel label;
    QubitRegister state;
};

/// Closed-form named states, qubits in mode order (a, b, c | d, e, f).
///
///   PSI2  = (HV - VH)/sqrt2
///   PSI4  = sqrt(2/3) GHZ4P - sqrt(1/3) EPR (x) EPR
///   PSI6  = GHZ6M/sqrt2 + (W3BAR (x) W3 - W3 (x) W3BAR)/2
///   GHZ4P = (HHVV + VVHH)/sqrt2,  GHZ6M = (HHHVVV - VVVHHH)/sqrt2
///   EPR   = (HV + VH)/sqrt2,      W3 = (HHV + HVH + VHH)/sqrt3
ReferenceState make_reference(ReferenceLabel label);

/// |<x|y>|^2. Throws std::invalid_argument on size mismatch.
double fidelity(const QubitRegister &x, const QubitRegister &y);

/// 1 - |<psi| u (x) ... (x) u |psi>|. Throws std::invalid_argument if u is not unitary within 1e-10.
double invariance_defect(const QubitRegister &state, const Eigen::Matrix2cd &u);

}  // namespace pdcfilter

#endif
