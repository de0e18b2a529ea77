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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdcfilter/analysis.h"
#include "pdcfilter/experiment.h"
#include "pdcfilter/pdc_source.h"
#include "pdcfilter/reference_states.h"
#include "pdcfilter/spectral_model.h"

namespace py = pybind11;
using namespace pdcfilter;

namespace {

// Registers handed in from Python get the first k output modes as labels.
QubitRegister register_from(const Eigen::VectorXcd &amplitudes) {
    size_t k = 0;
    while ((Eigen::Index{1} << k) < amplitudes.size()) {
        k++;
    }
    if (k > output_spatial_modes().size()) {
        throw std::invalid_argument("at most six qubits are supported");
    }
    std::vector<Spatial> modes(output_spatial_modes().begin(), output_spatial_modes().begin() + static_cast<long>(k));
    return QubitRegister(std::move(modes), amplitudes);
}

RunOptions options_from(const py::dict &settings) {
    RunOptions options;
    for (auto item : settings) {
        auto key = py::str(item.first).cast<std::string>();
        if (key == "theta" && py::isinstance<py::list>(item.second)) {
            for (auto t : item.second.cast<py::list>()) {
                apply_setting(options, key, py::str(t).cast<std::string>());
            }
            continue;
        }
        apply_setting(options, key, py::str(item.second).cast<std::string>());
    }
    return options;
}

std::vector<std::string> mode_names(const std::vector<Spatial> &modes) {
    std::vector<std::string> out;
    for (auto m : modes) {
        out.emplace_back(spatial_name(m));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(pdcfilter, m) {
    m.doc() = "Single-source multiphoton filtering of invariant polarization states";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    m.def(
        "pdc_term",
        [](int order) {
            std::vector<std::pair<std::vector<int>, Amplitude>> out;
            auto term = pdc_term(order);
            for (const auto &[occ, amp] : term.terms()) {
                out.emplace_back(std::vector<int>(occ.begin(), occ.end()), amp);
            }
            return out;
        },
        py::arg("order"),
        "Normalized n-pair emission as (occupation over a0H..fV, amplitude) pairs.");

    m.def(
        "emission_weights",
        [](int order, const std::string &model) {
            if (model != "bosonic" && model != "distinguishable") {
                throw std::invalid_argument("model must be 'bosonic' or 'distinguishable'");
            }
            return emission_weights(order, model == "bosonic" ? EmissionModel::bosonic : EmissionModel::distinguishable);
        },
        py::arg("order"),
        py::arg("model") = "bosonic");

    m.def(
        "filtered_state",
        [](int order, std::vector<std::string> modes, std::array<double, 3> split_a, std::array<double, 3> split_b) {
            ExperimentConfig cfg;
            cfg.order = order;
            for (const auto &name : modes) {
                cfg.modes.push_back(parse_spatial(name));
            }
            cfg.split_a = split_a;
            cfg.split_b = split_b;
            auto ps = filtered_state(cfg);
            py::dict out;
            out["probability"] = ps.probability;
            if (ps.state) {
                out["modes"] = mode_names(ps.state->modes());
                out["amplitudes"] = ps.state->amplitudes();
            } else {
                out["modes"] = py::none();
                out["amplitudes"] = py::none();
            }
            return out;
        },
        py::arg("order"),
        py::arg("modes") = std::vector<std::string>{},
        py::arg("split_a") = ExperimentConfig::cascade_amplitudes(),
        py::arg("split_b") = ExperimentConfig::cascade_amplitudes(),
        "Emission of the given order through the network, post-selected on one photon per mode.");

    m.def(
        "reference_state",
        [](const std::string &label) {
            auto ref = make_reference(parse_reference(label));
            return Eigen::VectorXcd(ref.state.amplitudes());
        },
        py::arg("label"));

    m.def(
        "fidelity",
        [](const Eigen::VectorXcd &x, const Eigen::VectorXcd &y) {
            return fidelity(register_from(x), register_from(y));
        });
    m.def(
        "invariance_defect",
        [](const Eigen::VectorXcd &state, const Eigen::Matrix2cd &u) {
            return invariance_defect(register_from(state), u);
        });

    m.def("e2_theory", &e2_theory);
    m.def("e4_theory", &e4_theory);
    m.def("e6_theory", [](std::array<double, 6> t) {
        return e6_theory(t);
    });
    m.def(
        "correlation_from_state",
        [](const Eigen::VectorXcd &state, std::vector<double> thetas) {
            return correlation_from_state(register_from(state), thetas);
        },
        py::arg("state"),
        py::arg("thetas"));
    m.def(
        "tensor_component",
        [](const Eigen::VectorXcd &state, const std::string &axes) {
            return tensor_component(register_from(state), axes);
        },
        py::arg("state"),
        py::arg("axes"));
    m.def("entanglement_indicator", &entanglement_indicator);
    m.def("bell_indicator", &bell_indicator);
    m.def("violation_sigmas", &violation_sigmas, py::arg("value"), py::arg("sigma"), py::arg("threshold") = 1.0);
    m.def(
        "propagate_poisson",
        [](std::vector<uint64_t> counts, std::vector<int> signs) {
            auto e = propagate_poisson(counts, signs);
            return py::make_tuple(e.value, e.sigma);
        });
    m.def(
        "sine_fit",
        [](std::vector<double> thetas, std::vector<double> values, std::optional<std::vector<double>> sigmas) {
            if (thetas.size() != values.size() || (sigmas && sigmas->size() != thetas.size())) {
                throw std::invalid_argument("thetas, values and sigmas must have equal length");
            }
            std::vector<FitPoint> points;
            for (size_t i = 0; i < thetas.size(); i++) {
                points.push_back({thetas[i], values[i], sigmas ? (*sigmas)[i] : 0.0});
            }
            auto fit = sine_fit(points);
            py::dict out;
            out["amplitude"] = fit.amplitude;
            out["phase"] = fit.phase;
            out["offset"] = fit.offset;
            out["amplitude_sigma"] = fit.amplitude_sigma;
            return out;
        },
        py::arg("thetas"),
        py::arg("values"),
        py::arg("sigmas") = py::none());

    m.def("v4_temp", &v4_temp);
    m.def("v6_temp", &v6_temp);
    m.def("r_from_wavelength_bandwidths", &r_from_wavelength_bandwidths);
    m.def("degrade_correlation", &degrade_correlation);

    m.def(
        "run",
        [](const std::string &command, const py::dict &settings) {
            auto options = options_from(settings);
            if (command == "sweep") {
                return sweep_json(run_sweep(options.experiment));
            }
            if (command == "witness") {
                return witness_json(run_witness(options.experiment));
            }
            if (command == "state-dump") {
                return state_dump_json(run_state_dump(options.experiment));
            }
            if (command == "vis-table") {
                auto rs = options.r_values.empty() ? default_r_values() : options.r_values;
                return visibility_json(visibility_table(rs));
            }
            throw std::invalid_argument("unknown command '" + command + "'");
        },
        py::arg("command"),
        py::arg("settings") = py::dict(),
        "Runs a command-line subcommand and returns its JSON document as text.");
}
