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

#include "pdcfilter/optics_network.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pdcfilter {

namespace {

constexpr double TWO_PI = 2 * std::numbers::pi;

std::vector<ModeId> output_modes() {
    std::vector<ModeId> modes;
    for (auto s : output_spatial_modes()) {
        modes.push_back({s, Pol::H});
        modes.push_back({s, Pol::V});
    }
    return modes;
}

Eigen::Index output_position(ModeId m) {
    return static_cast<Eigen::Index>(m.index() - ModeId{Spatial::a, Pol::H}.index());
}

bool is_output(Spatial s) {
    return s != Spatial::a0 && s != Spatial::b0;
}

// Real beamsplitter [[c, s], [s, -c]] between two spatial modes, both polarizations.
void mix(Eigen::MatrixXcd &m, Spatial first, Spatial second, double c, double s) {
    Eigen::MatrixXcd bs = Eigen::MatrixXcd::Identity(12, 12);
    for (auto p : {Pol::H, Pol::V}) {
        auto i = output_position({first, p});
        auto j = output_position({second, p});
        bs(i, i) = c;
        bs(j, i) = s;
        bs(i, j) = s;
        bs(j, j) = -c;
    }
    m = bs * m;
}

}  // namespace

void SplitSpec::validate() const {
    if (is_output(source)) {
        throw std::invalid_argument("split source must be a0 or b0");
    }
    double total = 0;
    for (double a : amplitudes) {
        if (!(a > 0)) {
            throw std::invalid_argument("split amplitudes must be positive");
        }
        total += a * a;
    }
    if (std::abs(total - 1) > 1e-12) {
        throw std::invalid_argument("split amplitudes must have unit squared sum");
    }
    for (auto o : outputs) {
        if (!is_output(o)) {
            throw std::invalid_argument("split outputs must be among a..f");
        }
    }
}

void AnalyzerSetting::validate() const {
    if (!is_output(mode)) {
        throw std::invalid_argument("analyzers sit on the output modes a..f");
    }
    if (!(theta >= 0 && theta < TWO_PI)) {
        throw std::invalid_argument("analyzer angle must lie in [0, 2 pi)");
    }
}

double wrap_angle(double theta) {
    double t = std::fmod(theta, TWO_PI);
    if (t < 0) {
        t += TWO_PI;
    }
    return t >= TWO_PI ? 0.0 : t;
}

NetworkConfig NetworkConfig::standard() {
    NetworkConfig cfg;
    cfg.splits[0] = default_cascade_split(Spatial::a0);
    cfg.splits[1] = default_cascade_split(Spatial::b0);
    const auto &outs = output_spatial_modes();
    for (size_t k = 0; k < outs.size(); k++) {
        cfg.analyzers[k] = {outs[k], 0.0};
    }
    return cfg;
}

NetworkConfig NetworkConfig::with_splits(const std::array<double, 3> &a_side, const std::array<double, 3> &b_side) {
    auto cfg = standard();
    cfg.splits[0].amplitudes = a_side;
    cfg.splits[1].amplitudes = b_side;
    cfg.validate();
    return cfg;
}

double NetworkConfig::theta(Spatial mode) const {
    for (const auto &a : analyzers) {
        if (a.mode == mode) {
            return a.theta;
        }
    }
    throw std::invalid_argument("no analyzer on mode " + std::string(spatial_name(mode)));
}

NetworkConfig NetworkConfig::with_theta(Spatial mode, double theta) const {
    auto cfg = *this;
    for (auto &a : cfg.analyzers) {
        if (a.mode == mode) {
            a.theta = theta;
            a.validate();
            return cfg;
        }
    }
    throw std::invalid_argument("no analyzer on mode " + std::string(spatial_name(mode)));
}

void NetworkConfig::validate() const {
    std::vector<Spatial> seen;
    for (const auto &s : splits) {
        s.validate();
        seen.insert(seen.end(), s.outputs.begin(), s.outputs.end());
    }
    if (splits[0].source == splits[1].source) {
        throw std::invalid_argument("the two splits must have different sources");
    }
    std::sort(seen.begin(), seen.end());
    std::vector<Spatial> expected(output_spatial_modes().begin(), output_spatial_modes().end());
    if (seen != expected) {
        throw std::invalid_argument("split outputs must cover a..f exactly once");
    }
    std::vector<Spatial> analyzed;
    for (const auto &a : analyzers) {
        a.validate();
        analyzed.push_back(a.mode);
    }
    std::sort(analyzed.begin(), analyzed.end());
    if (analyzed != expected) {
        throw std::invalid_argument("exactly one analyzer per output mode is required");
    }
}

SplitSpec default_cascade_split(Spatial source) {
    SplitSpec s;
    s.source = source;
    if (source == Spatial::b0) {
        s.outputs = {Spatial::d, Spatial::e, Spatial::f};
    } else if (source != Spatial::a0) {
        throw std::invalid_argument("split source must be a0 or b0");
    }
    s.amplitudes = {std::sqrt(0.5), 0.5, 0.5};
    return s;
}

Eigen::Matrix2cd analyzer_block(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const std::complex<double> phase = std::polar(1.0, theta / 2);
    Eigen::Matrix2cd m;
    m << c, s, -s, c;
    return phase * m;
}

ModeUnitary build_network_unitary(const NetworkConfig &cfg) {
    cfg.validate();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(12, 12);
    for (const auto &split : cfg.splits) {
        const auto &[t0, t1, t2] = split.amplitudes;
        const double rest = std::sqrt(t1 * t1 + t2 * t2);
        mix(m, split.outputs[0], split.outputs[1], t0, rest);
        mix(m, split.outputs[1], split.outputs[2], t1 / rest, t2 / rest);
    }
    Eigen::MatrixXcd analyzers = Eigen::MatrixXcd::Identity(12, 12);
    for (const auto &a : cfg.analyzers) {
        auto h = output_position({a.mode, Pol::H});
        analyzers.block(h, h, 2, 2) = analyzer_block(a.theta);
    }
    return ModeUnitary(output_modes(), analyzers * m);
}

ModeUnitary source_coupling(const NetworkConfig &cfg) {
    std::vector<ModeId> modes;
    for (const auto &split : cfg.splits) {
        for (auto p : {Pol::H, Pol::V}) {
            modes.push_back({split.source, p});
            modes.push_back({split.outputs[0], p});
        }
    }
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(8, 8);
    for (Eigen::Index k = 0; k < 8; k += 2) {
        swap(k, k + 1) = 1;
        swap(k + 1, k) = 1;
    }
    return ModeUnitary(modes, swap);
}

FockState propagate(const FockState &source_state, const NetworkConfig &cfg) {
    auto coupled = apply_mode_unitary(source_state, source_coupling(cfg));
    return apply_mode_unitary(coupled, build_network_unitary(cfg));
}

}  // namespace pdcfilter
