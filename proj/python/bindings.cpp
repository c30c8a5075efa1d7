// Copyright 2026 The migsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "migsim/aggregate.hpp"
#include "migsim/detector.hpp"
#include "migsim/errors.hpp"
#include "migsim/oracle.hpp"
#include "migsim/scenarios.hpp"

namespace py = pybind11;
using namespace migsim;

namespace {

Eigen::MatrixXd stack(const std::vector<Eigen::VectorXd>& rows) {
    if (rows.empty()) return {};
    Eigen::MatrixXd out(rows.size(), rows.front().size());
    for (std::size_t k = 0; k < rows.size(); ++k) out.row(k) = rows[k].transpose();
    return out;
}

py::dict run_config(const std::string& text, std::optional<std::size_t> realizations,
                    std::optional<std::uint64_t> seed, unsigned threads) {
    ScenarioConfig config = parse_config(text);
    if (realizations) config.realizations = *realizations;
    if (seed) config.seed = *seed;
    EnsembleResult ens;
    {
        py::gil_scoped_release release;
        const Simulation sim(config);
        EnsembleOptions opts;
        opts.threads = threads;
        ens = sim.run_ensemble(config.realizations, config.seed, opts);
    }
    py::dict d;
    d["times"] = ens.times;
    d["populations"] = stack(ens.mean_populations);
    d["purity"] = ens.mean_purity;
    d["fidelities"] = ens.fidelities;
    d["final_fidelity_mean"] = ens.mean_fidelity;
    d["final_fidelity_stderr"] = ens.stderr_fidelity;
    d["target_site"] = ens.target_site;
    d["count"] = ens.count;
    d["failures"] = ens.failures.size();
    d["seed"] = ens.master_seed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Measurement-guided exciton transport in Rydberg aggregates (C++ core).";

    auto base = py::register_exception<Error>(m, "MigsimError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
    py::register_exception<CapacityExceeded>(m, "CapacityExceeded", base.ptr());

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<>())
        .def_static("reference_defaults", &PhysicalParams::reference_defaults)
        .def_readwrite("c3", &PhysicalParams::c3)
        .def_readwrite("c6_s", &PhysicalParams::c6_s)
        .def_readwrite("c4_p", &PhysicalParams::c4_p)
        .def_readwrite("omega_p0", &PhysicalParams::omega_p0)
        .def_readwrite("omega_c", &PhysicalParams::omega_c)
        .def_readwrite("gamma_p", &PhysicalParams::gamma_p)
        .def_readwrite("probe_ratio", &PhysicalParams::probe_ratio)
        .def("validate", &PhysicalParams::validate);

    m.def("v_c", &v_c, py::arg("params"));
    m.def("shadow_radius", &shadow_radius, py::arg("coefficient"), py::arg("eta"), py::arg("params"));
    m.def("rabi_period", &rabi_period, py::arg("lattice_r"), py::arg("c3"));
    m.def("interaction_table", [](int n_sites, double lattice_r, double offset_y, const PhysicalParams& p) {
        return build_interactions(nominal_geometry(n_sites, lattice_r, offset_y), p).vbar;
    }, py::arg("n_sites"), py::arg("lattice_r"), py::arg("detector_offset_y"), py::arg("params"));

    m.def("coupling_at", [](double x, int n_sites, double lattice_r) {
        return coupling_at(CouplingProfile::standard(n_sites, lattice_r), x);
    }, py::arg("x"), py::arg("n_sites") = 5, py::arg("lattice_r") = 20.0);
    m.def("calibrate_kappa", [](double target_period, int n_sites, double lattice_r) {
        return calibrate_kappa(CouplingProfile::standard(n_sites, lattice_r), target_period).kappa;
    }, py::arg("target_period"), py::arg("n_sites") = 5, py::arg("lattice_r") = 20.0);

    m.def("purity", &purity, py::arg("rho"));
    m.def("trace_distance", &trace_distance, py::arg("rho_a"), py::arg("rho_b"));

    m.def("preset_names", &preset_names);
    m.def("preset", [](const std::string& name) { return serialize(preset(name)); }, py::arg("name"),
          "Config text of a named preset.");
    m.def("validate", [](const std::string& text) { return validate(parse_config(text)); }, py::arg("config"),
          "Validates config text; returns warnings, raises ConfigError.");
    m.def("run", &run_config, py::arg("config"), py::arg("realizations") = py::none(),
          py::arg("seed") = py::none(), py::arg("threads") = 1u,
          "Runs config text and returns ensemble-mean time series and statistics.");

    m.def("compare_models", [](double ratio) {
        OracleSetup setup;
        setup.ratio = ratio;
        OracleReport r;
        {
            py::gil_scoped_release release;
            r = compare_models(PhysicalParams::reference_defaults(), setup);
        }
        py::dict d;
        d["times"] = r.times;
        d["distance"] = r.distance;
        d["max_distance"] = r.max_distance;
        d["mean_distance"] = r.mean_distance;
        return d;
    }, py::arg("ratio") = 0.2);

    m.attr("__version__") = std::string(version());
}
