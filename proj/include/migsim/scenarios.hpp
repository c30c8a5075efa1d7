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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "migsim/dynamics.hpp"
#include "migsim/geometry.hpp"
#include "migsim/montecarlo.hpp"
#include "migsim/params.hpp"
#include "migsim/polariton.hpp"

namespace migsim {

/// A number together with the unit it was written in. Configs keep the
/// original spelling so that parse -> serialize -> parse is exact.
struct Quantity {
    double value = 0.0;
    UnitTag tag = UnitTag::Dimensionless;

    double internal() const { return from_config_units(value, tag); }
    bool operator==(const Quantity&) const = default;
};

enum class ProbeMode { Train, Schedule, None };

std::string_view to_string(ProbeMode mode);

struct ScenarioConfig {
    std::string name = "custom";

    // geometry
    int n_sites = 5;
    Quantity lattice_r{20.0, UnitTag::Micrometre};
    Quantity detector_offset_y{1.0, UnitTag::Micrometre};

    // params
    Quantity c3{1619.0, UnitTag::Per2piMHz};
    Quantity c6_s{-87.0, UnitTag::Per2piMHz};
    Quantity c4_p{-1032.0, UnitTag::Per2piMHz};
    Quantity omega_p0{45.0, UnitTag::Per2piMHz};
    Quantity omega_c{90.0, UnitTag::Per2piMHz};
    Quantity gamma_p{6.1, UnitTag::Per2piMHz};
    Quantity probe_ratio{2.5, UnitTag::Dimensionless};

    // profile
    Quantity omega_min{0.5, UnitTag::Per2piKHz};
    Quantity omega_max{5.28, UnitTag::Per2piKHz};
    Quantity sigma_c{1.0, UnitTag::Micrometre};
    Quantity w{7.5, UnitTag::Micrometre};
    std::optional<Quantity> target_period;  ///< defaults to the transfer period

    // probe
    ProbeMode mode = ProbeMode::Train;
    std::vector<double> launch_um;
    Quantity sigma_p{3.0, UnitTag::Micrometre};
    std::string schedule;       ///< inline instructions, ';'-separated
    std::string schedule_file;  ///< used when schedule is empty

    // disorder
    Quantity sigma_trap{0.0, UnitTag::Micrometre};
    std::array<bool, 3> dims{true, true, false};
    std::uint64_t seed = 1;
    std::size_t realizations = 1;

    // run
    Quantity t_final{5.0, UnitTag::Microsecond};
    Quantity dt{4e-5, UnitTag::Microsecond};
    Quantity output_dt{0.01, UnitTag::Microsecond};
    int initial_site = 1;
    int target_site = 5;
    bool include_h_eff = true;

    bool operator==(const ScenarioConfig&) const = default;

    PhysicalParams physical_params() const;
    CouplingProfile coupling_profile() const;
    DisorderSpec disorder() const;
};

/// Flat `section.key = value [unit]` text, one entry per line, '#' comments.
/// Every physical quantity must carry its unit tag.
ScenarioConfig parse_config(std::string_view text);
/// Reads a file; a relative probe.schedule_file is resolved against the
/// directory of the config file.
ScenarioConfig load_config(const std::filesystem::path& path);
std::string serialize(const ScenarioConfig& config);

/// Throws ConfigError on a broken invariant, returns warnings otherwise.
std::vector<std::string> validate(const ScenarioConfig& config);

/// transport2, transport4, switching, baseline.
ScenarioConfig preset(std::string_view name);
std::vector<std::string> preset_names();

/// Instructions of the switching experiment, starting with the exciton on
/// site 3: hold, one site left, hold, two sites right, hold.
std::vector<SwitchOp> switching_sequence(double off_duration_us = 1.0);

/// A validated config with everything derived from it: nominal geometry,
/// calibrated velocity model, probe field and output grid.
class Simulation {
public:
    explicit Simulation(ScenarioConfig config);

    const ScenarioConfig& config() const { return config_; }
    const PhysicalParams& params() const { return params_; }
    const SystemGeometry& nominal_geometry() const { return geometry_; }
    const CouplingProfile& profile() const { return profile_; }
    const VelocityModel& velocity() const { return velocity_; }
    const ProbeField& probe() const { return *probe_; }
    double t_period() const { return t_period_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    RunResult run(const SystemGeometry& geom, double dt) const;
    RunResult run(const SystemGeometry& geom) const { return run(geom, config_.dt.internal()); }
    RunResult run_nominal() const { return run(geometry_); }

    EnsembleResult run_ensemble(std::size_t count, std::uint64_t seed,
                                const EnsembleOptions& options = {}) const;

private:
    ScenarioConfig config_;
    PhysicalParams params_;
    SystemGeometry geometry_;
    CouplingProfile profile_;
    VelocityModel velocity_;
    double t_period_ = 0.0;
    std::vector<double> grid_;
    std::shared_ptr<const ProbeField> probe_;
    std::vector<std::string> warnings_;
};

/// Columns t_us, rho_11 .. rho_NN, purity; 17 significant digits.
void write_timeseries(std::ostream& out, const std::vector<double>& times,
                      const std::vector<Eigen::VectorXd>& populations,
                      const std::vector<double>& purity);

std::string summary_json(const ScenarioConfig& config, const Simulation& sim,
                         const EnsembleResult& ensemble);

struct OutputPaths {
    std::filesystem::path timeseries;
    std::filesystem::path summary;
};

/// Writes timeseries.csv (ensemble means) and summary.json into dir.
OutputPaths write_outputs(const std::filesystem::path& dir, const ScenarioConfig& config,
                          const Simulation& sim, const EnsembleResult& ensemble);

/// MIGSIM_OUTPUT_DIR when set, otherwise ./migsim_out.
std::filesystem::path default_output_dir();

/// Library version string.
std::string_view version();

/// Command-line front end; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace migsim
