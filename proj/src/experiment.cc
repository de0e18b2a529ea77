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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "pdcfilter/optics_network.h"
#include "pdcfilter/pdc_source.h"
#include "pdcfilter/spectral_model.h"

namespace pdcfilter {

namespace {

using json = nlohmann::ordered_json;

constexpr double HALF_PI = std::numbers::pi / 2;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

double parse_double(std::string_view text, std::string_view what) {
    std::string s(trim(text));
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used == s.size() && std::isfinite(v)) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw ConfigError("invalid number '" + s + "' for " + std::string(what));
}

uint64_t parse_uint(std::string_view text, std::string_view what) {
    auto s = trim(text);
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError("invalid non-negative integer '" + std::string(s) + "' for " + std::string(what));
    }
    return v;
}

Spatial parse_mode(std::string_view text) {
    try {
        return parse_spatial(trim(text));
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

std::array<double, 3> parse_triple(std::string_view text, std::string_view what) {
    auto parts = split(text, ',');
    if (parts.size() != 3) {
        throw ConfigError(std::string(what) + " needs three comma separated amplitudes");
    }
    return {parse_double(parts[0], what), parse_double(parts[1], what), parse_double(parts[2], what)};
}

NetworkConfig network_for(const ExperimentConfig &cfg) {
    try {
        return NetworkConfig::with_splits(cfg.split_a, cfg.split_b);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

/// Outcome distribution mixed with white noise so that E scales by `visibility`.
std::vector<double> degraded_distribution(std::vector<double> p, double visibility) {
    const double uniform = 1.0 / static_cast<double>(p.size());
    for (auto &x : p) {
        x = visibility * x + (1 - visibility) * uniform;
    }
    return p;
}

double round12(double v) {
    if (!std::isfinite(v)) {
        return v;
    }
    return std::stod(format_number(v));
}

json number(double v) {
    if (!std::isfinite(v)) {
        return nullptr;
    }
    return round12(v);
}

json config_json(const ExperimentConfig &cfg) {
    json j;
    j["order"] = cfg.order;
    json modes = json::array();
    for (auto m : cfg.resolved_modes()) {
        modes.push_back(std::string(spatial_name(m)));
    }
    j["modes"] = modes;
    json fixed = json::object();
    for (auto m : cfg.resolved_modes()) {
        if (m != cfg.sweep.mode) {
            fixed[std::string(spatial_name(m))] = number(cfg.fixed_angles.contains(m) ? cfg.fixed_angles.at(m) : HALF_PI);
        }
    }
    j["fixed_angles"] = fixed;
    j["sweep"] = {{"mode", std::string(spatial_name(cfg.sweep.mode))},
                  {"start", number(cfg.sweep.start)},
                  {"stop", number(cfg.sweep.stop)},
                  {"steps", cfg.sweep.steps}};
    j["split_a"] = {number(cfg.split_a[0]), number(cfg.split_a[1]), number(cfg.split_a[2])};
    j["split_b"] = {number(cfg.split_b[0]), number(cfg.split_b[1]), number(cfg.split_b[2])};
    j["visibility"] = cfg.visibility.str();
    j["shots"] = cfg.shots;
    j["seed"] = cfg.seed;
    return j;
}

std::string config_comment(const ExperimentConfig &cfg) {
    std::string modes;
    for (auto m : cfg.resolved_modes()) {
        modes += (modes.empty() ? "" : ",") + std::string(spatial_name(m));
    }
    return "# angles in radians; order=" + std::to_string(cfg.order) + " modes=" + modes +
           " sweep=" + std::string(spatial_name(cfg.sweep.mode)) + " visibility=" + cfg.visibility.str() +
           " shots=" + std::to_string(cfg.shots) + " seed=" + std::to_string(cfg.seed) + "\n";
}

QubitRegister require_state(const PostSelection &ps) {
    if (!ps.state) {
        throw NumericalError("post-selection on the requested modes has zero probability");
    }
    return *ps.state;
}

}  // namespace

VisibilitySource VisibilitySource::parse(std::string_view text) {
    auto t = trim(text);
    if (t == "ideal") {
        return {};
    }
    if (t.size() > 2 && (t.substr(0, 2) == "r=" || t.substr(0, 2) == "v=")) {
        double v = parse_double(t.substr(2), "visibility");
        if (t[0] == 'r') {
            if (v < 0) {
                throw ConfigError("bandwidth ratio must be non-negative");
            }
            return {VisibilityKind::spectral, v};
        }
        if (v < 0 || v > 1) {
            throw ConfigError("explicit visibility must lie in [0, 1]");
        }
        return {VisibilityKind::explicit_value, v};
    }
    throw ConfigError("visibility must be 'ideal', 'r=<f>' or 'v=<f>'");
}

std::string VisibilitySource::str() const {
    switch (kind) {
        case VisibilityKind::spectral:
            return "r=" + format_number(value);
        case VisibilityKind::explicit_value:
            return "v=" + format_number(value);
        default:
            return "ideal";
    }
}

double VisibilitySource::visibility(int order) const {
    switch (kind) {
        case VisibilityKind::spectral:
            return max_visibility(order, value);
        case VisibilityKind::explicit_value:
            return value;
        default:
            return 1.0;
    }
}

SweepSpec SweepSpec::parse(std::string_view text) {
    auto parts = split(text, ':');
    if (parts.size() != 4) {
        throw ConfigError("sweep must be <mode>:<start>:<stop>:<steps>");
    }
    SweepSpec s;
    s.mode = parse_mode(parts[0]);
    s.start = parse_double(parts[1], "sweep start");
    s.stop = parse_double(parts[2], "sweep stop");
    auto steps = parse_uint(parts[3], "sweep steps");
    if (steps > 1'000'000) {
        throw ConfigError("too many sweep steps");
    }
    s.steps = static_cast<int>(steps);
    return s;
}

double SweepSpec::angle(int k) const {
    return start + (stop - start) * k / steps;
}

SweepSpec ExperimentConfig::default_sweep() {
    return {Spatial::b, 0.0, 2 * std::numbers::pi, 25};
}

std::array<double, 3> ExperimentConfig::cascade_amplitudes() {
    return default_cascade_split().amplitudes;
}

std::vector<Spatial> ExperimentConfig::default_modes(int order) {
    using S = Spatial;
    switch (order) {
        case 1:
            return {S::b, S::d};
        case 2:
            return {S::a, S::b, S::d, S::e};
        case 3:
            return {S::a, S::b, S::c, S::d, S::e, S::f};
        default:
            throw ConfigError("order must be 1, 2 or 3");
    }
}

std::vector<Spatial> ExperimentConfig::resolved_modes() const {
    auto m = modes.empty() ? default_modes(order) : modes;
    std::sort(m.begin(), m.end());
    return m;
}

std::vector<double> ExperimentConfig::angles(double theta) const {
    std::vector<double> out;
    for (auto m : resolved_modes()) {
        if (m == sweep.mode) {
            out.push_back(theta);
        } else {
            auto it = fixed_angles.find(m);
            out.push_back(it == fixed_angles.end() ? HALF_PI : it->second);
        }
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (order < 1 || order > MAX_PDC_ORDER) {
        throw ConfigError("order must be 1, 2 or 3");
    }
    auto m = resolved_modes();
    if (m.size() != static_cast<size_t>(2 * order)) {
        throw ConfigError("an order-" + std::to_string(order) + " emission needs " + std::to_string(2 * order) +
                          " coincidence modes");
    }
    if (std::adjacent_find(m.begin(), m.end()) != m.end()) {
        throw ConfigError("coincidence modes must be distinct");
    }
    for (auto s : m) {
        if (s == Spatial::a0 || s == Spatial::b0) {
            throw ConfigError("coincidence modes must be among a..f");
        }
    }
    if (std::find(m.begin(), m.end(), sweep.mode) == m.end()) {
        throw ConfigError("the swept mode must be one of the coincidence modes");
    }
    if (fixed_angles.contains(sweep.mode)) {
        throw ConfigError("the swept mode cannot also have a fixed angle");
    }
    for (const auto &[mode, theta] : fixed_angles) {
        if (std::find(m.begin(), m.end(), mode) == m.end()) {
            throw ConfigError("fixed angle given for mode " + std::string(spatial_name(mode)) +
                              ", which is not a coincidence mode");
        }
        if (!std::isfinite(theta)) {
            throw ConfigError("angles must be finite");
        }
    }
    if (sweep.steps < 2) {
        throw ConfigError("a sweep needs at least two steps");
    }
    network_for(*this);
    if (visibility.kind == VisibilityKind::explicit_value && (visibility.value < 0 || visibility.value > 1)) {
        throw ConfigError("explicit visibility must lie in [0, 1]");
    }
    if (visibility.kind == VisibilityKind::spectral && !(visibility.value >= 0)) {
        throw ConfigError("bandwidth ratio must be non-negative");
    }
}

void apply_setting(RunOptions &options, std::string_view raw_key, std::string_view value) {
    auto key = trim(raw_key);
    auto &cfg = options.experiment;
    if (key == "order") {
        auto v = parse_uint(value, "order");
        if (v < 1 || v > 3) {
            throw ConfigError("order must be 1, 2 or 3");
        }
        cfg.order = static_cast<int>(v);
    } else if (key == "modes") {
        cfg.modes.clear();
        for (auto part : split(value, ',')) {
            cfg.modes.push_back(parse_mode(part));
        }
    } else if (key == "theta") {
        auto eq = value.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("theta must be <mode>=<radians>");
        }
        cfg.fixed_angles[parse_mode(value.substr(0, eq))] = parse_double(value.substr(eq + 1), "theta");
    } else if (key == "sweep") {
        cfg.sweep = SweepSpec::parse(value);
    } else if (key == "visibility") {
        cfg.visibility = VisibilitySource::parse(value);
    } else if (key == "shots") {
        cfg.shots = parse_uint(value, "shots");
    } else if (key == "seed") {
        cfg.seed = parse_uint(value, "seed");
    } else if (key == "split-a") {
        cfg.split_a = parse_triple(value, "split-a");
    } else if (key == "split-b") {
        cfg.split_b = parse_triple(value, "split-b");
    } else if (key == "format") {
        auto f = std::string(trim(value));
        if (f != "csv" && f != "json") {
            throw ConfigError("format must be csv or json");
        }
        options.format = f;
    } else if (key == "out") {
        options.out = std::string(trim(value));
    } else if (key == "r") {
        options.r_values.clear();
        for (auto part : split(value, ',')) {
            double r = parse_double(part, "r");
            if (r < 0) {
                throw ConfigError("r values must be non-negative");
            }
            options.r_values.push_back(r);
        }
    } else {
        throw ConfigError("unknown setting '" + std::string(key) + "'");
    }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        out.emplace_back(std::string(trim(t.substr(0, eq))), std::string(trim(t.substr(eq + 1))));
    }
    return out;
}

PostSelection filtered_state(const ExperimentConfig &cfg) {
    cfg.validate();
    auto network = network_for(cfg);
    auto output = propagate(pdc_term(cfg.order), network);
    auto modes = cfg.resolved_modes();
    return postselect(output, modes);
}

uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    // splitmix64 finalizer over the combined value.
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SweepResult run_sweep(const ExperimentConfig &cfg) {
    auto ps = filtered_state(cfg);
    auto state = require_state(ps);
    SweepResult result;
    result.config = cfg;
    result.probability = ps.probability;
    result.visibility = cfg.visibility.visibility(cfg.order);

    std::vector<FitPoint> points;
    for (int k = 0; k < cfg.sweep.steps; k++) {
        SweepRow row;
        row.theta = cfg.sweep.angle(k);
        auto thetas = cfg.angles(row.theta);
        row.e_theory = invariant_correlation(thetas);
        row.e_degraded = degrade_correlation(row.e_theory, result.visibility);
        if (cfg.shots > 0) {
            auto p = degraded_distribution(outcome_distribution(state, thetas), result.visibility);
            auto records = monte_carlo_counts(state.modes(), thetas, p, cfg.shots, derive_seed(cfg.seed, static_cast<uint64_t>(k)));
            auto est = propagate_poisson(records);
            row.e_mc = est.value;
            row.sigma_mc = est.sigma;
            points.push_back({row.theta, est.value, est.sigma});
        } else {
            points.push_back({row.theta, row.e_degraded, 0.0});
        }
        result.rows.push_back(row);
    }
    result.fit = cfg.shots > 0 ? sine_fit_counting(points, cfg.shots) : sine_fit(points);
    return result;
}

WitnessResult run_witness(const ExperimentConfig &cfg) {
    auto state = require_state(filtered_state(cfg));
    WitnessResult result;
    result.config = cfg;
    result.visibility = cfg.visibility.visibility(cfg.order);
    const size_t k = state.num_qubits();
    std::array<double, 3> components{};
    std::array<double, 3> sigmas{};
    const std::array<char, 3> axes{'x', 'y', 'z'};
    for (size_t i = 0; i < 3; i++) {
        std::string axis(k, axes[i]);
        if (cfg.shots == 0) {
            components[i] = degrade_correlation(tensor_component(state, axis), result.visibility);
            continue;
        }
        auto p = degraded_distribution(pauli_outcome_distribution(state, axis), result.visibility);
        auto counts = sample_counts(p, cfg.shots, derive_seed(cfg.seed, 1000 + i));
        std::vector<int> signs(p.size());
        for (size_t j = 0; j < p.size(); j++) {
            signs[j] = outcome_sign(j);
        }
        auto est = propagate_poisson(counts, signs);
        components[i] = est.value;
        sigmas[i] = est.sigma;
    }
    result.report = make_witness_report(k, components, sigmas);
    return result;
}

StateDump run_state_dump(const ExperimentConfig &cfg) {
    auto ps = filtered_state(cfg);
    auto state = require_state(ps);
    auto label = invariant_state_for_order(cfg.order);
    double f = fidelity(state, make_reference(label).state);
    return StateDump{cfg, ps.probability, state, label, f};
}

std::vector<double> default_r_values() {
    return {0.0, 0.25, 0.5, 0.76, 1.0, 1.5, 2.0};
}

std::vector<VisibilityRow> visibility_table(std::span<const double> r_values) {
    std::vector<VisibilityRow> rows;
    for (double r : r_values) {
        rows.push_back({r, v4_temp(r), v6_temp(r)});
    }
    return rows;
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string sweep_csv(const SweepResult &result) {
    std::string out = config_comment(result.config);
    out += "theta_rad,E_theory,E_degraded,E_mc,sigma_mc\n";
    for (const auto &row : result.rows) {
        out += format_number(row.theta) + "," + format_number(row.e_theory) + "," + format_number(row.e_degraded) + ",";
        out += (row.e_mc ? format_number(*row.e_mc) : "") + ",";
        out += (row.sigma_mc ? format_number(*row.sigma_mc) : "") + "\n";
    }
    const auto &f = result.fit;
    out += "# fit amplitude=" + format_number(f.amplitude) + " phase=" + format_number(f.phase) +
           " offset=" + format_number(f.offset) + " amplitude_sigma=" + format_number(f.amplitude_sigma) + "\n";
    return out;
}

std::string sweep_json(const SweepResult &result) {
    json j;
    j["command"] = "sweep";
    j["config"] = config_json(result.config);
    j["visibility"] = number(result.visibility);
    j["postselection_probability"] = number(result.probability);
    json rows = json::array();
    for (const auto &row : result.rows) {
        rows.push_back({{"theta_rad", number(row.theta)},
                        {"E_theory", number(row.e_theory)},
                        {"E_degraded", number(row.e_degraded)},
                        {"E_mc", row.e_mc ? number(*row.e_mc) : json(nullptr)},
                        {"sigma_mc", row.sigma_mc ? number(*row.sigma_mc) : json(nullptr)}});
    }
    j["rows"] = rows;
    j["fit"] = {{"amplitude", number(result.fit.amplitude)},
                {"phase", number(result.fit.phase)},
                {"offset", number(result.fit.offset)},
                {"amplitude_sigma", number(result.fit.amplitude_sigma)}};
    return j.dump(2) + "\n";
}

std::string witness_csv(const WitnessResult &result) {
    const auto &r = result.report;
    std::string out = config_comment(result.config);
    out += "quantity,value,sigma\n";
    for (const auto &[axes, value] : r.components) {
        out += "T_" + axes + "," + format_number(value) + "," + format_number(r.sigmas.at(axes)) + "\n";
    }
    out += "indicator," + format_number(r.indicator) + "," + format_number(r.indicator_sigma) + "\n";
    out += "bell," + format_number(r.bell_value) + "," + format_number(r.bell_sigma) + "\n";
    out += "# indicator_sigmas_violated=" + format_number(r.sigmas_violated) +
           " bell_sigmas_violated=" + format_number(r.bell_sigmas_violated) + "\n";
    return out;
}

std::string witness_json(const WitnessResult &result) {
    const auto &r = result.report;
    json j;
    j["command"] = "witness";
    j["config"] = config_json(result.config);
    j["visibility"] = number(result.visibility);
    json comps = json::object();
    json sig = json::object();
    for (const auto &[axes, value] : r.components) {
        comps[axes] = number(value);
        sig[axes] = number(r.sigmas.at(axes));
    }
    j["report"] = {{"components", comps},
                   {"sigmas", sig},
                   {"indicator", number(r.indicator)},
                   {"indicator_sigma", number(r.indicator_sigma)},
                   {"bell_value", number(r.bell_value)},
                   {"bell_sigma", number(r.bell_sigma)},
                   {"sigmas_violated", number(r.sigmas_violated)},
                   {"bell_sigmas_violated", number(r.bell_sigmas_violated)}};
    return j.dump(2) + "\n";
}

std::string state_dump_csv(const StateDump &dump) {
    std::string out = config_comment(dump.config);
    out += "basis,re,im\n";
    for (size_t i = 0; i < dump.state.dimension(); i++) {
        auto a = dump.state[i];
        if (std::abs(a) > 1e-12) {
            out += dump.state.basis_label(i) + "," + format_number(a.real()) + "," + format_number(a.imag()) + "\n";
        }
    }
    out += "# probability=" + format_number(dump.probability) + " reference=" +
           std::string(reference_name(dump.reference)) + " fidelity=" + format_number(dump.fidelity) + "\n";
    return out;
}

std::string state_dump_json(const StateDump &dump) {
    json j;
    j["command"] = "state-dump";
    j["config"] = config_json(dump.config);
    json rows = json::array();
    for (size_t i = 0; i < dump.state.dimension(); i++) {
        auto a = dump.state[i];
        if (std::abs(a) > 1e-12) {
            rows.push_back({{"basis", dump.state.basis_label(i)}, {"re", number(a.real())}, {"im", number(a.imag())}});
        }
    }
    j["rows"] = rows;
    j["report"] = {{"probability", number(dump.probability)},
                   {"reference", std::string(reference_name(dump.reference))},
                   {"fidelity", number(dump.fidelity)}};
    return j.dump(2) + "\n";
}

std::string visibility_csv(const std::vector<VisibilityRow> &rows) {
    std::string out = "r,V4,V6\n";
    for (const auto &row : rows) {
        out += format_number(row.r) + "," + format_number(row.v4) + "," + format_number(row.v6) + "\n";
    }
    return out;
}

std::string visibility_json(const std::vector<VisibilityRow> &rows) {
    json j;
    j["command"] = "vis-table";
    json rs = json::array();
    for (const auto &row : rows) {
        rs.push_back(number(row.r));
    }
    j["config"] = {{"r", rs}};
    json arr = json::array();
    for (const auto &row : rows) {
        arr.push_back({{"r", number(row.r)}, {"V4", number(row.v4)}, {"V6", number(row.v6)}});
    }
    j["rows"] = arr;
    return j.dump(2) + "\n";
}

}  // namespace pdcfilter
