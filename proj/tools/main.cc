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

#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pdcfilter/experiment.h"

using namespace pdcfilter;

namespace {

constexpr int EXIT_CONFIG = 2;
constexpr int EXIT_NUMERICAL = 3;

struct FlagValues {
    std::string config;
    std::string order;
    std::string modes;
    std::vector<std::string> thetas;
    std::string sweep;
    std::string visibility;
    std::string shots;
    std::string seed;
    std::string split_a;
    std::string split_b;
    std::string format;
    std::string out;
    std::string r;
};

void add_common_flags(CLI::App *cmd, FlagValues &f) {
    cmd->add_option("--config", f.config, "Flat key=value file; flags override it");
    cmd->add_option("--order", f.order, "Emission order 1, 2 or 3");
    cmd->add_option("--modes", f.modes, "Coincidence modes, comma separated (e.g. a,b,d,e)");
    cmd->add_option("--theta", f.thetas, "Fixed analyzer angle <mode>=<radians>; repeatable");
    cmd->add_option("--sweep", f.sweep, "<mode>:<start>:<stop>:<steps>, stop excluded");
    cmd->add_option("--visibility", f.visibility, "ideal | r=<filter ratio> | v=<visibility>");
    cmd->add_option("--shots", f.shots, "Events per setting; 0 gives exact probabilities");
    cmd->add_option("--seed", f.seed, "Monte-Carlo seed");
    cmd->add_option("--split-a", f.split_a, "Split amplitudes of source a0 (three, comma separated)");
    cmd->add_option("--split-b", f.split_b, "Split amplitudes of source b0 (three, comma separated)");
    cmd->add_option("--format", f.format, "csv | json");
    cmd->add_option("--out", f.out, "Output path (default: standard output)");
}

/// Defaults, then the config file, then the flags.
RunOptions resolve(const CLI::App *cmd, const FlagValues &f) {
    RunOptions options;
    if (!f.config.empty()) {
        for (const auto &[key, value] : read_config_file(f.config)) {
            apply_setting(options, key, value);
        }
    }
    auto given = [cmd](const char *name) {
        const auto *opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--order")) apply_setting(options, "order", f.order);
    if (given("--modes")) apply_setting(options, "modes", f.modes);
    for (const auto &t : f.thetas) {
        apply_setting(options, "theta", t);
    }
    if (given("--sweep")) apply_setting(options, "sweep", f.sweep);
    if (given("--visibility")) apply_setting(options, "visibility", f.visibility);
    if (given("--shots")) apply_setting(options, "shots", f.shots);
    if (given("--seed")) apply_setting(options, "seed", f.seed);
    if (given("--split-a")) apply_setting(options, "split-a", f.split_a);
    if (given("--split-b")) apply_setting(options, "split-b", f.split_b);
    if (given("--format")) apply_setting(options, "format", f.format);
    if (given("--out")) apply_setting(options, "out", f.out);
    if (given("--r")) apply_setting(options, "r", f.r);
    return options;
}

void emit(const RunOptions &options, const std::string &text) {
    if (options.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(options.out, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write '" + options.out + "'");
    }
    out << text;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multiphoton filtering of invariant polarization states from one down-conversion source"};
    app.require_subcommand(1);

    FlagValues sweep_flags;
    FlagValues witness_flags;
    FlagValues dump_flags;
    FlagValues table_flags;
    auto *sweep = app.add_subcommand("sweep", "Correlation curve while one analyzer is rotated");
    auto *witness = app.add_subcommand("witness", "Correlation-tensor entanglement and Bell indicators");
    auto *dump = app.add_subcommand("state-dump", "Post-selected register and its fidelity with the invariant state");
    auto *table = app.add_subcommand("vis-table", "Maximal four- and six-photon visibilities versus filter ratio");
    add_common_flags(sweep, sweep_flags);
    add_common_flags(witness, witness_flags);
    add_common_flags(dump, dump_flags);
    table->add_option("--config", table_flags.config, "Flat key=value file; flags override it");
    table->add_option("--r", table_flags.r, "Filter/pump bandwidth ratios, comma separated");
    table->add_option("--format", table_flags.format, "csv | json");
    table->add_option("--out", table_flags.out, "Output path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return EXIT_CONFIG;
    }

    try {
        if (sweep->parsed()) {
            auto options = resolve(sweep, sweep_flags);
            auto result = run_sweep(options.experiment);
            emit(options, options.format == "json" ? sweep_json(result) : sweep_csv(result));
        } else if (witness->parsed()) {
            auto options = resolve(witness, witness_flags);
            auto result = run_witness(options.experiment);
            emit(options, options.format == "json" ? witness_json(result) : witness_csv(result));
        } else if (dump->parsed()) {
            auto options = resolve(dump, dump_flags);
            auto result = run_state_dump(options.experiment);
            emit(options, options.format == "json" ? state_dump_json(result) : state_dump_csv(result));
        } else if (table->parsed()) {
            auto options = resolve(table, table_flags);
            auto rs = options.r_values.empty() ? default_r_values() : options.r_values;
            auto rows = visibility_table(rs);
            emit(options, options.format == "json" ? visibility_json(rows) : visibility_csv(rows));
        }
    } catch (const NumericalError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_NUMERICAL;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_CONFIG;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_NUMERICAL;
    }
    return 0;
}
