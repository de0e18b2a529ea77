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

#ifndef PDCFILTER_EXPERIMENT_H
#define PDCFILTER_EXPERIMENT_H

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdcfilter/analysis.h"
#include "pdcfilter/fock.h"
#include "pdcfilter/measurement.h"
#include "pdcfilter/reference_states.h"

namespace pdcfilter {

/// Invalid user configuration (maps to exit code 2).
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class VisibilityKind { ideal, spectral, explicit_value };

struct VisibilitySource {
    VisibilityKind kind = VisibilityKind::ideal;
    /// r for `spectral`, V for `explicit_value`.
    double value = 0;

    /// Accepts "ideal", "r=<ratio>" or "v=<visibility>".
    static VisibilitySource parse(std::string_view text);
    std::string str() const;
    double visibility(int order) const;
};

struct SweepSpec {
    Spatial mode = Spatial::b;
    double start = 0;
    double stop = 0;
    int steps = 25;

    /// "<mode>:<start>:<stop>:<steps>", angles in radians.
    static SweepSpec parse(std::string_view text);
    /// Angle of point k; the stop angle itself is excluded.
    double angle(int k) const;
};

struct ExperimentConfig {
    int order = 1;
    /// Coincidence modes; empty selects the default for the order.
    std::vector<Spatial> modes;
    /// Analyzer angles of the non-swept modes; unspecified ones sit at pi/2.
    std::map<Spatial, double> fixed_angles;
    SweepSpec sweep = default_sweep();
    std::array<double, 3> split_a = cascade_amplitudes();
    std::array<double, 3> split_b = cascade_amplitudes();
    VisibilitySource visibility;
    /// 0 selects exact probabilities.
    uint64_t shots = 0;
    uint64_t seed = 1;

    static SweepSpec default_sweep();
    static std::array<double, 3> cascade_amplitudes();
    static std::vector<Spatial> default_modes(int order);

    std::vector<Spatial> resolved_modes() const;
    /// Analyzer angles in mode order with the swept mode at `theta`.
    std::vector<double> angles(double theta) const;
    /// Throws ConfigError.
    void validate() const;
};

/// Everything the command line can set.
struct RunOptions {
    ExperimentConfig experiment;
    std::string format = "csv";
    std::string out;
    std::vector<double> r_values;
};

/// Applies one `key=value` setting; keys match the long flag names
/// (order, modes, theta, sweep, visibility, shots, seed, split-a, split-b,
/// format, out, r). Throws ConfigError.
void apply_setting(RunOptions &options, std::string_view key, std::string_view value);

/// Reads a flat `key=value` file; blank lines and lines starting with '#' are skipped.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string &path);

/// Pair emission of the configured order, sent through the network with all
/// analyzers at 0 and post-selected on the configured modes.
PostSelection filtered_state(const ExperimentConfig &cfg);

struct SweepRow {
    double theta = 0;
    double e_theory = 0;
    double e_degraded = 0;
    std::optional<double> e_mc;
    std::optional<double> sigma_mc;
};

struct SweepResult {
    ExperimentConfig config;
    double visibility = 1;
    double probability = 0;
    std::vector<SweepRow> rows;
    SineFit fit;
};

struct WitnessResult {
    ExperimentConfig config;
    double visibility = 1;
    WitnessReport report;
};

struct StateDump {
    ExperimentConfig config;
    double probability = 0;
    QubitRegister state;
    ReferenceLabel reference;
    double fidelity = 0;
};

struct VisibilityRow {
    double r = 0;
    double v4 = 0;
    double v6 = 0;
};

/// Throws ConfigError or NumericalError.
SweepResult run_sweep(const ExperimentConfig &cfg);
WitnessResult run_witness(const ExperimentConfig &cfg);
StateDump run_state_dump(const ExperimentConfig &cfg);
std::vector<VisibilityRow> visibility_table(std::span<const double> r_values);

/// Default r grid of the vis-table command.
std::vector<double> default_r_values();

/// Per-point seed derived from the run seed.
uint64_t derive_seed(uint64_t seed, uint64_t stream);

/// "%.12g"; non-finite values print as inf, -inf or nan.
std::string format_number(double value);

std::string sweep_csv(const SweepResult &result);
std::string sweep_json(const SweepResult &result);
std::string witness_csv(const WitnessResult &result);
std::string witness_json(const WitnessResult &result);
std::string state_dump_csv(const StateDump &dump);
std::string state_dump_json(const StateDump &dump);
std::string visibility_csv(const std::vector<VisibilityRow> &rows);
std::string visibility_json(const std::vector<VisibilityRow> &rows);

}  // namespace pdcfilter

#endif
