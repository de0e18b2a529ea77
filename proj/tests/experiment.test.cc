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

#include "pdcfilter/experiment.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "pdcfilter/spectral_model.h"
#include "test_util.h"

using namespace pdcfilter;
using namespace pdcfilter::testing;

namespace {

constexpr double HALF_PI = std::numbers::pi / 2;

ExperimentConfig config(int order) {
    ExperimentConfig cfg;
    cfg.order = order;
    return cfg;
}

ExperimentConfig parsed(std::initializer_list<std::pair<std::string_view, std::string_view>> settings) {
    RunOptions options;
    for (const auto &[k, v] : settings) {
        apply_setting(options, k, v);
    }
    return options.experiment;
}

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult run_cli(const std::string &args) {
    std::string cmd = std::string(PDCFILTER_CLI) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        out.append(buf, n);
    }
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("pdcfilter_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(experiment, visibility_source_parsing) {
    EXPECT_EQ(VisibilitySource::parse("ideal").kind, VisibilityKind::ideal);
    auto r = VisibilitySource::parse("r=0.76");
    EXPECT_EQ(r.kind, VisibilityKind::spectral);
    EXPECT_NEAR(r.visibility(2), v4_temp(0.76), 1e-15);
    EXPECT_NEAR(r.visibility(3), v6_temp(0.76), 1e-15);
    EXPECT_EQ(r.visibility(1), 1);
    auto v = VisibilitySource::parse("v=0.838");
    EXPECT_EQ(v.visibility(3), 0.838);
    EXPECT_EQ(VisibilitySource::parse(v.str()).value, 0.838);
    EXPECT_THROW(VisibilitySource::parse("v=1.5"), ConfigError);
    EXPECT_THROW(VisibilitySource::parse("r=-1"), ConfigError);
    EXPECT_THROW(VisibilitySource::parse("x=1"), ConfigError);
    EXPECT_THROW(VisibilitySource::parse("v=abc"), ConfigError);
}

TEST(experiment, sweep_spec) {
    auto s = SweepSpec::parse("d:0:6.283185307179586:4");
    EXPECT_EQ(s.mode, Spatial::d);
    EXPECT_EQ(s.steps, 4);
    EXPECT_NEAR(s.angle(1), HALF_PI, 1e-15);
    EXPECT_THROW(SweepSpec::parse("d:0:1"), ConfigError);
    EXPECT_THROW(SweepSpec::parse("q:0:1:4"), ConfigError);
}

TEST(experiment, config_validation) {
    EXPECT_NO_THROW(config(1).validate());
    auto wrong_count = config(2);
    wrong_count.modes = {Spatial::a, Spatial::b};
    EXPECT_THROW(wrong_count.validate(), ConfigError);
    auto swept_fixed = config(1);
    swept_fixed.fixed_angles[Spatial::b] = 0;
    EXPECT_THROW(swept_fixed.validate(), ConfigError);
    auto outside = config(1);
    outside.fixed_angles[Spatial::a] = 0;
    EXPECT_THROW(outside.validate(), ConfigError);
    auto one_step = config(1);
    one_step.sweep.steps = 1;
    EXPECT_THROW(one_step.validate(), ConfigError);
    auto swept_outside = config(1);
    swept_outside.sweep.mode = Spatial::a;
    EXPECT_THROW(swept_outside.validate(), ConfigError);
    auto bad_split = config(1);
    bad_split.split_a = {0.5, 0.5, 0.5};
    EXPECT_THROW(bad_split.validate(), std::invalid_argument);
}

TEST(experiment, settings) {
    auto cfg = parsed({{"order", "2"}, {"modes", "e,d,b,a"}, {"theta", "a=0.5"}, {"shots", "100"}, {"seed", "7"}});
    EXPECT_EQ(cfg.order, 2);
    EXPECT_EQ(cfg.resolved_modes(), (std::vector<Spatial>{Spatial::a, Spatial::b, Spatial::d, Spatial::e}));
    EXPECT_EQ(cfg.fixed_angles.at(Spatial::a), 0.5);
    EXPECT_EQ(cfg.shots, 100u);
    EXPECT_EQ(cfg.seed, 7u);
    auto angles = cfg.angles(1.0);
    EXPECT_EQ(angles, (std::vector<double>{0.5, 1.0, HALF_PI, HALF_PI}));
    RunOptions options;
    EXPECT_THROW(apply_setting(options, "order", "4"), ConfigError);
    EXPECT_THROW(apply_setting(options, "shots", "-3"), ConfigError);
    EXPECT_THROW(apply_setting(options, "format", "xml"), ConfigError);
    EXPECT_THROW(apply_setting(options, "colour", "red"), ConfigError);
    EXPECT_THROW(apply_setting(options, "theta", "a"), ConfigError);
    apply_setting(options, "r", "0,0.76");
    EXPECT_EQ(options.r_values, (std::vector<double>{0, 0.76}));
}

TEST(experiment, config_file) {
    auto path = temp_path("cfg.txt");
    {
        std::ofstream f(path);
        f << "# comment\n\norder = 3\nvisibility=v=0.9\n";
    }
    auto entries = read_config_file(path.string());
    ASSERT_EQ(entries.size(), 2u);
    EXPECT_EQ(entries[0], (std::pair<std::string, std::string>{"order", "3"}));
    EXPECT_EQ(entries[1], (std::pair<std::string, std::string>{"visibility", "v=0.9"}));
    {
        std::ofstream f(path);
        f << "order 3\n";
    }
    EXPECT_THROW(read_config_file(path.string()), ConfigError);
    std::filesystem::remove(path);
    EXPECT_THROW(read_config_file(path.string()), ConfigError);
}

TEST(experiment, formula_matches_every_valid_mode_choice) {
    const std::vector<std::vector<Spatial>> choices = {
        {Spatial::b, Spatial::e},
        {Spatial::c, Spatial::f},
        {Spatial::a, Spatial::b, Spatial::d, Spatial::f},
        {Spatial::b, Spatial::c, Spatial::d, Spatial::f},
        {Spatial::a, Spatial::c, Spatial::e, Spatial::f},
    };
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    for (const auto &modes : choices) {
        auto cfg = config(static_cast<int>(modes.size() / 2));
        cfg.modes = modes;
        cfg.sweep.mode = modes[1];
        auto ps = filtered_state(cfg);
        ASSERT_TRUE(ps.state.has_value());
        for (int trial = 0; trial < 5; trial++) {
            std::vector<double> t(modes.size());
            for (auto &x : t) {
                x = angle(rng);
            }
            EXPECT_NEAR(invariant_correlation(t), correlation_from_state(*ps.state, t), 1e-10);
        }
    }
}

TEST(experiment, two_photon_sweep) {
    auto result = run_sweep(config(1));
    ASSERT_EQ(result.rows.size(), 25u);
    for (const auto &row : result.rows) {
        EXPECT_NEAR(row.e_theory, -std::cos(row.theta - HALF_PI), 1e-12);
        EXPECT_EQ(row.e_degraded, row.e_theory);
        EXPECT_FALSE(row.e_mc.has_value());
    }
    EXPECT_NEAR(result.fit.amplitude, 1, 1e-10);
    EXPECT_NEAR(result.probability, 0.125, 1e-14);
}

TEST(experiment, six_photon_sweep_with_visibility) {
    auto cfg = config(3);
    cfg.visibility = VisibilitySource::parse("v=0.838");
    EXPECT_NEAR(run_sweep(cfg).fit.amplitude, 0.838, 1e-10);
}

TEST(experiment, four_photon_sweep_with_spectral_visibility) {
    auto cfg = config(2);
    cfg.visibility = VisibilitySource::parse("r=0.76");
    EXPECT_NEAR(run_sweep(cfg).fit.amplitude, 0.93, 0.005);
}

TEST(experiment, six_photon_spectral_fit_roundtrip) {
    auto cfg = config(3);
    cfg.visibility = VisibilitySource::parse("r=0.76");
    EXPECT_NEAR(run_sweep(cfg).fit.amplitude, v6_temp(0.76), 1e-9);
}

TEST(experiment, monte_carlo_sweep) {
    auto cfg = config(1);
    cfg.shots = 10000;
    cfg.seed = 3;
    auto result = run_sweep(cfg);
    for (const auto &row : result.rows) {
        ASSERT_TRUE(row.e_mc.has_value());
        EXPECT_LT(std::abs(*row.e_mc - row.e_theory), 5 * std::max(*row.sigma_mc, 1e-4));
    }
    EXPECT_NEAR(result.fit.amplitude, 1, 5 * result.fit.amplitude_sigma);
    auto again = run_sweep(cfg);
    EXPECT_EQ(sweep_csv(again), sweep_csv(result));
}

TEST(experiment, witnesses) {
    auto w1 = run_witness(config(1)).report;
    EXPECT_NEAR(w1.indicator, 3, 1e-10);
    auto cfg2 = config(2);
    cfg2.visibility = VisibilitySource::parse("v=0.919");
    EXPECT_NEAR(run_witness(cfg2).report.bell_value, 2 * 0.919 * 0.919, 1e-10);
    auto w3 = run_witness(config(3)).report;
    EXPECT_NEAR(w3.indicator, 3, 1e-10);
    EXPECT_NEAR(w3.bell_value, 2, 1e-10);
    EXPECT_NEAR(w3.components.at("xxxxxx"), -1, 1e-12);
}

TEST(experiment, monte_carlo_witness) {
    auto cfg = config(2);
    cfg.shots = 20000;
    auto r = run_witness(cfg).report;
    for (const auto &[axes, value] : r.components) {
        EXPECT_NEAR(value, 1, 1e-12) << axes;
    }
    cfg.visibility = VisibilitySource::parse("v=0.9");
    auto noisy = run_witness(cfg).report;
    EXPECT_NEAR(noisy.indicator, 3 * 0.81, 6 * noisy.indicator_sigma);
    EXPECT_GT(noisy.sigmas_violated, 100);
}

TEST(experiment, state_dumps) {
    auto d1 = run_state_dump(config(1));
    EXPECT_EQ(d1.reference, ReferenceLabel::PSI2);
    EXPECT_NEAR(d1.fidelity, 1, 1e-10);
    int nonzero = 0;
    for (size_t i = 0; i < d1.state.dimension(); i++) {
        if (std::abs(d1.state[i]) > 1e-12) {
            nonzero++;
            EXPECT_NEAR(std::abs(d1.state[i]), 1 / std::sqrt(2.0), 1e-12);
        }
    }
    EXPECT_EQ(nonzero, 2);
    EXPECT_NEAR(run_state_dump(config(2)).fidelity, 1, 1e-10);
    EXPECT_NEAR(run_state_dump(config(3)).fidelity, 1, 1e-10);
}

TEST(experiment, zero_probability_selection) {
    auto cfg = config(1);
    cfg.modes = {Spatial::a, Spatial::b};
    EXPECT_THROW(run_sweep(cfg), NumericalError);
}

TEST(experiment, visibility_table) {
    auto rows = visibility_table(default_r_values());
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows[0].r, 0);
    EXPECT_EQ(rows[0].v4, 1);
    EXPECT_EQ(rows[0].v6, 1);
    for (size_t i = 1; i < rows.size(); i++) {
        EXPECT_LT(rows[i].v4, rows[i - 1].v4);
        EXPECT_LT(rows[i].v6, rows[i - 1].v6);
    }
    std::vector<double> r = {0.76};
    auto row = visibility_table(r)[0];
    EXPECT_NEAR(row.v4, 0.93, 0.005);
    EXPECT_NEAR(row.v6, 0.90, 0.005);
}

TEST(experiment, serialization) {
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
    auto sweep = run_sweep(config(1));
    auto csv = sweep_csv(sweep);
    EXPECT_NE(csv.find("theta_rad,E_theory,E_degraded,E_mc,sigma_mc\n"), std::string::npos);
    auto doc = nlohmann::json::parse(sweep_json(sweep));
    EXPECT_EQ(doc["rows"].size(), 25u);
    EXPECT_NEAR(doc["fit"]["amplitude"].get<double>(), 1, 1e-10);
    auto witness = nlohmann::json::parse(witness_json(run_witness(config(1))));
    EXPECT_NEAR(witness["report"]["indicator"].get<double>(), 3, 1e-10);
    auto dump = nlohmann::json::parse(state_dump_json(run_state_dump(config(2))));
    EXPECT_NEAR(dump["report"]["fidelity"].get<double>(), 1, 1e-10);
    std::vector<double> r = {0.76};
    EXPECT_EQ(visibility_csv(visibility_table(r)), "r,V4,V6\n0.76,0.930565380502,0.895977956947\n");
}

TEST(cli, sweep_output_is_deterministic) {
    auto args = "sweep --order 2 --shots 5000 --seed 11 --visibility r=0.76";
    auto a = run_cli(args);
    auto b = run_cli(args);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out);
    auto c = run_cli("sweep --order 2 --shots 5000 --seed 12 --visibility r=0.76");
    EXPECT_NE(a.out, c.out);
}

TEST(cli, commands) {
    auto table = run_cli("vis-table --r 0,0.76");
    EXPECT_EQ(table.exit_code, 0);
    EXPECT_EQ(table.out, "r,V4,V6\n0,1,1\n0.76,0.930565380502,0.895977956947\n");
    auto witness = run_cli("witness --order 3 --format json");
    EXPECT_EQ(witness.exit_code, 0);
    EXPECT_NEAR(nlohmann::json::parse(witness.out)["report"]["indicator"].get<double>(), 3, 1e-10);
    auto dump = run_cli("state-dump --order 1");
    EXPECT_EQ(dump.exit_code, 0);
    EXPECT_NE(dump.out.find("basis,re,im"), std::string::npos);
}

TEST(cli, config_file_and_output_path) {
    auto cfg = temp_path("cli.cfg");
    auto out = temp_path("out.csv");
    {
        std::ofstream f(cfg);
        f << "order=3\nvisibility=v=0.5\nsweep=c:0:6.283185307179586:8\n";
    }
    auto r = run_cli("sweep --config " + cfg.string() + " --visibility v=0.838 --out " + out.string());
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(out);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("# fit amplitude=0.838"), std::string::npos);
    std::filesystem::remove(cfg);
    std::filesystem::remove(out);
}

TEST(cli, exit_codes) {
    EXPECT_EQ(run_cli("sweep --order 9").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --bogus").exit_code, 2);
    EXPECT_EQ(run_cli("").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --visibility v=2").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --config /nonexistent/file").exit_code, 2);
    EXPECT_EQ(run_cli("sweep --order 1 --modes a,b").exit_code, 3);
    EXPECT_EQ(run_cli("sweep --order 1 --sweep b:0:0.5:8").exit_code, 3);
}
