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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "migsim/errors.hpp"
#include "migsim/oracle.hpp"
#include "migsim/scenarios.hpp"

namespace migsim {

namespace {

ScenarioConfig resolve_target(const std::string& target) {
    if (std::filesystem::is_regular_file(target)) return load_config(target);
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), target) != names.end()) return preset(target);
    throw ConfigError("'" + target + "' is neither a config file nor a preset name");
}

int cmd_run(const std::string& target, std::optional<std::uint64_t> seed,
            std::optional<std::size_t> realizations, std::string out_dir, unsigned threads,
            bool save_realizations, std::ostream& out) {
    ScenarioConfig config = resolve_target(target);
    if (seed) config.seed = *seed;
    if (realizations) config.realizations = *realizations;
    const Simulation sim(config);
    for (const auto& w : sim.warnings()) out << "warning: " << w << "\n";

    const std::filesystem::path dir = out_dir.empty() ? default_output_dir() : std::filesystem::path(out_dir);
    EnsembleOptions opts;
    opts.threads = threads;
    if (save_realizations) {
        std::filesystem::create_directories(dir / "realizations");
        opts.on_realization = [&](std::uint64_t i, const RunResult& r) {
            std::ostringstream name;
            name << "realization_" << std::setw(5) << std::setfill('0') << i << ".csv";
            std::ofstream f(dir / "realizations" / name.str());
            write_timeseries(f, r.times, r.populations, r.purity);
        };
    }
    const EnsembleResult ens = sim.run_ensemble(config.realizations, config.seed, opts);
    const OutputPaths paths = write_outputs(dir, config, sim, ens);

    out << config.name << ": rho_" << ens.target_site << ens.target_site << "(" << ens.times.back()
        << " us) = " << ens.mean_fidelity;
    if (ens.count > 1) out << " +/- " << ens.stderr_fidelity;
    out << ", purity = " << ens.mean_purity.back() << " over " << ens.count << " realization(s)";
    if (!ens.failures.empty()) out << ", " << ens.failures.size() << " failed";
    out << "\nwrote " << paths.timeseries.string() << " and " << paths.summary.string() << "\n";
    return 0;
}

int cmd_profile(const std::string& target, double dx, double dt, std::string out_dir, std::ostream& out) {
    const ScenarioConfig config = resolve_target(target);
    const Simulation sim(config);
    const std::filesystem::path dir = out_dir.empty() ? default_output_dir() : std::filesystem::path(out_dir);
    std::filesystem::create_directories(dir);

    const double r = sim.nominal_geometry().lattice_r;
    double x_lo = -2.0 * r;
    for (double x : config.launch_um) x_lo = std::min(x_lo, x);
    const double x_hi = (config.n_sites + 1) * r;
    {
        std::ofstream f(dir / "profile.csv");
        f << "x_um,omega_c_rad_per_us,v_g_um_per_us\n" << std::setprecision(17);
        const auto n = static_cast<long>(std::floor((x_hi - x_lo) / dx));
        for (long k = 0; k <= n; ++k) {
            const double x = x_lo + static_cast<double>(k) * dx;
            f << x << ',' << coupling_at(sim.profile(), x) << ','
              << group_velocity(sim.velocity(), sim.profile(), x) << '\n';
        }
    }
    out << "kappa = " << std::setprecision(10) << sim.velocity().kappa << " rad^2/us^2, cell time "
        << cell_traversal_time(sim.velocity(), sim.profile()) << " us (transfer period " << sim.t_period()
        << " us)\nwrote " << (dir / "profile.csv").string() << "\n";

    if (config.mode == ProbeMode::Train) {
        const auto& traj = static_cast<const TrainProbe&>(sim.probe()).trajectories();
        std::ofstream f(dir / "trajectories.csv");
        f << "t_us";
        for (std::size_t p = 1; p <= traj.pulse_count(); ++p) f << ",x_" << p << "_um";
        f << '\n' << std::setprecision(17);
        for (double t : uniform_grid(config.t_final.internal(), dt)) {
            f << t;
            for (double x : traj.positions(t)) f << ',' << x;
            f << '\n';
        }
        out << "wrote " << (dir / "trajectories.csv").string() << "\n";
    }
    return 0;
}

int cmd_oracle(double ratio, double dt_full, std::string csv, std::ostream& out) {
    OracleSetup setup;
    setup.ratio = ratio;
    setup.dt_full = dt_full;
    const OracleReport report = compare_models(PhysicalParams::reference_defaults(), setup);
    out << std::setprecision(6) << "Omega_p/Omega_c = " << ratio << ": max trace distance " << report.max_distance
        << ", mean " << report.mean_distance << " over " << report.times.back() << " us\n";
    if (!csv.empty()) {
        std::ofstream f(csv);
        f << "t_us,trace_distance\n" << std::setprecision(17);
        for (std::size_t k = 0; k < report.times.size(); ++k) f << report.times[k] << ',' << report.distance[k] << '\n';
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Measurement-guided exciton transport in Rydberg aggregates", "migsim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));

    std::string target;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> realizations;
    std::string out_dir;
    unsigned threads = 1;
    bool save_realizations = false;
    auto* run = app.add_subcommand("run", "Run a config file or preset and write outputs");
    run->add_option("target", target, "Config file or preset name")->required();
    run->add_option("--seed", seed, "Disorder master seed");
    run->add_option("--realizations", realizations, "Number of disorder realizations")->check(CLI::PositiveNumber);
    run->add_option("--out", out_dir, "Output directory (default $MIGSIM_OUTPUT_DIR or ./migsim_out)");
    run->add_option("--threads", threads, "Worker threads, 0 for all cores");
    run->add_flag("--save-realizations", save_realizations, "Also write one time series per realization");

    double dx = 0.05;
    double traj_dt = 0.01;
    auto* profile = app.add_subcommand("profile", "Dump coupling profile, group velocity and pulse trajectories");
    profile->add_option("target", target, "Config file or preset name")->required();
    profile->add_option("--dx", dx, "Spatial step (um)")->check(CLI::PositiveNumber);
    profile->add_option("--dt", traj_dt, "Trajectory time step (us)")->check(CLI::PositiveNumber);
    profile->add_option("--out", out_dir, "Output directory");

    double ratio = 0.2;
    double dt_full = 1e-5;
    std::string csv;
    auto* oracle = app.add_subcommand("oracle", "Compare the full and reduced models on a two-site chain");
    oracle->add_option("--ratio", ratio, "Omega_p / Omega_c")->check(CLI::Range(1e-6, 0.5));
    oracle->add_option("--dt-full", dt_full, "Full-model step (us)")->check(CLI::PositiveNumber);
    oracle->add_option("--csv", csv, "Write the trace distance versus time");

    auto* check = app.add_subcommand("validate", "Check a config without running it");
    check->add_option("target", target, "Config file or preset name")->required();

    std::string preset_name;
    auto* show = app.add_subcommand("preset", "Print a preset as config text");
    show->add_option("name", preset_name, "Preset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*run) return cmd_run(target, seed, realizations, out_dir, threads, save_realizations, out);
        if (*profile) return cmd_profile(target, dx, traj_dt, out_dir, out);
        if (*oracle) return cmd_oracle(ratio, dt_full, csv, out);
        if (*check) {
            const ScenarioConfig config = resolve_target(target);
            for (const auto& w : validate(config)) out << "warning: " << w << "\n";
            out << "ok\n";
            return 0;
        }
        if (*show) {
            out << serialize(preset(preset_name));
            return 0;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace migsim
