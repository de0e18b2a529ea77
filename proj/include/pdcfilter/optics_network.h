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

#ifndef PDCFILTER_OPTICS_NETWORK_H
#define PDCFILTER_OPTICS_NETWORK_H

#include <array>

#include "pdcfilter/fock.h"

namespace pdcfilter {

/// Polarization-independent 1 -> 3 fan-out of one source fibre.
///
/// The source enters the port labelled outputs[0]; the two other inputs are vacuum.
struct SplitSpec {
    Spatial source = Spatial::a0;
    std::array<Spatial, 3> outputs{Spatial::a, Spatial::b, Spatial::c};
    /// Real transmission amplitudes into each output, squares summing to one.
    std::array<double, 3> amplitudes{};

    void validate() const;
};

/// Linear polarization analysis of cos(theta) sigma_z + sin(theta) sigma_x.
struct AnalyzerSetting {
    Spatial mode = Spatial::a;
    double theta = 0;

    void validate() const;
};

/// Maps any angle into [0, 2 pi).
double wrap_angle(double theta);

struct NetworkConfig {
    std::array<SplitSpec, 2> splits;
    std::array<AnalyzerSetting, 6> analyzers;

    /// Two cascaded 50/50 splitters per side and every analyzer at theta = 0.
    static NetworkConfig standard();
    /// Same topology with the given split amplitudes for the a0 and b0 sides.
    static NetworkConfig with_splits(const std::array<double, 3> &a_side, const std::array<double, 3> &b_side);

    double theta(Spatial mode) const;
    NetworkConfig with_theta(Spatial mode, double theta) const;

    void validate() const;
};

/// Amplitudes (1/sqrt 2, 1/2, 1/2): the first 50/50 splitter's transmitted arm,
/// then its reflected arm split again.
SplitSpec default_cascade_split(Spatial source = Spatial::a0);

/// Basis change of one analyzer on the (H, V) pair of a spatial mode.
///
/// Row 0 is the +1 eigenvector (exits the H port), row 1 the -1 eigenvector.
/// The e^{i theta/2} prefactor makes the block 2 pi periodic and equal to the
/// identity at theta = 0.
Eigen::Matrix2cd analyzer_block(double theta);

/// Fan-out splitters followed by the six analyzers, over the 12 output modes aH..fV.
ModeUnitary build_network_unitary(const NetworkConfig &cfg);

/// Permutation that routes the source fibres into the splitter input ports
/// (a0 <-> outputs[0] of each split).
ModeUnitary source_coupling(const NetworkConfig &cfg);

/// Sends a state living on a0/b0 through the whole network.
FockState propagate(const FockState &source_state, const NetworkConfig &cfg);

}  // namespace pdcfilter

#endif
