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

#include "migsim/scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "migsim/aggregate.hpp"
#include "migsim/detector.hpp"
#include "migsim/errors.hpp"

#ifndef MIGSIM_VERSION
#define MIGSIM_VERSION "0.0.0"
#endif

namespace migsim {

std::string_view version() { return MIGSIM_VERSION; }

std::string_view to_string(ProbeMode mode) {
    switch (mode) {
        case ProbeMode::Train: return "train";
        case ProbeMode::Schedule: return "schedule";
        case ProbeMode::None: return "none";
    }
    return "none";
}

PhysicalParams ScenarioConfig::physical_params() const {
    PhysicalParams p;
    p.c3 = c3.internal();
    p.c6_s = c6_s.internal();
    p.c4_p = c4_p.internal();
    p.omega_p0 = omega_p0.internal();
    p.omega_c = omega_c.internal();
    p.gamma_p = gamma_p.internal();
    p.probe_ratio = probe_ratio.internal();
    return p;
}

CouplingProfile ScenarioConfig::coupling_profile() const {
    CouplingProfile p;
    p.omega_min = omega_min.internal();
    p.omega_max = omega_max.internal();
    p.sigma_c = sigma_c.internal();
    p.w = w.internal();
    p.n_sites = n_sites;
    p.lattice_r = lattice_r.internal();
    return p;
}

DisorderSpec ScenarioConfig::disorder() const {
    DisorderSpec d;
    d.sigma_trap = sigma_trap.internal();
    d.dims = dims;
    d.seed = seed;
    return d;
}

// ---------------------------------------------------------------------------
// Config text format

namespace {

enum class Dim { Frequency, Length, Time, Ratio };

bool tag_matches(Dim dim, UnitTag tag) {
    switch (dim) {
        case Dim::Frequency: return tag == UnitTag::Per2piMHz || tag == UnitTag::Per2piKHz;
        case Dim::Length: return tag == UnitTag::Micrometre;
        case Dim::Time: return tag == UnitTag::Microsecond;
        case Dim::Ratio: return tag == UnitTag::Dimensionless;
    }
    return false;
}

std::string_view dim_name(Dim dim) {
    switch (dim) {
        case Dim::Frequency: return "per2pi_MHz or per2pi_kHz";
        case Dim::Length: return "um";
        case Dim::Time: return "us";
        case Dim::Ratio: return "dimensionless";
    }
    return "";
}

std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

double parse_number(const std::string& key, const std::string& token) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    if (!token.empty() && *first == '+') ++first;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last || !std::isfinite(v))
        throw ConfigError(key + ": '" + token + "' is not a finite number");
    return v;
}

bool looks_numeric(const std::string& token) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    return ec == std::errc() && p == token.data() + token.size();
}

template <typename Int>
Int parse_integer(const std::string& key, const std::string& token) {
    Int v{};
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || p != token.data() + token.size())
        throw ConfigError(key + ": '" + token + "' is not an integer");
    return v;
}

UnitTag parse_tag(const std::string& key, const std::string& token, Dim dim) {
    UnitTag tag;
    try {
        tag = unit_tag_from_string(token);
    } catch (const ParseError&) {
        throw ConfigError(key + ": unknown unit tag '" + token + "'");
    }
    if (!tag_matches(dim, tag))
        throw ConfigError(key + ": unit '" + token + "' does not fit, expected " + std::string(dim_name(dim)));
    return tag;
}

Quantity parse_quantity(const std::string& key, const std::string& value, Dim dim) {
    const auto tokens = split_ws(value);
    if (tokens.size() == 1)
        throw ConfigError(key + ": physical value needs a unit tag (" + std::string(dim_name(dim)) + ")");
    if (tokens.size() != 2) throw ConfigError(key + ": expected '<number> <unit>'");
    return {parse_number(key, tokens[0]), parse_tag(key, tokens[1], dim)};
}

std::string format_quantity(const Quantity& q) {
    return format_number(q.value) + " " + std::string(to_string(q.tag));
}

struct Field {
    std::string key;
    std::function<void(ScenarioConfig&, const std::string&)> set;
    // Returns nullopt when the entry is omitted from the serialized form.
    std::function<std::optional<std::string>(const ScenarioConfig&)> get;
};

Field quantity_field(std::string key, Quantity ScenarioConfig::*member, Dim dim) {
    return {key,
            [key, member, dim](ScenarioConfig& c, const std::string& v) { c.*member = parse_quantity(key, v, dim); },
            [member](const ScenarioConfig& c) { return std::optional(format_quantity(c.*member)); }};
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(key + ": expected true or false");
}

void reject_tag(const std::string& key, const std::string& v) {
    if (split_ws(v).size() != 1) throw ConfigError(key + ": expected a single untagged value");
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        using C = ScenarioConfig;
        std::vector<Field> f;
        f.push_back({"name",
                     [](C& c, const std::string& v) {
                         if (v.empty()) throw ConfigError("name: must not be empty");
                         c.name = v;
                     },
                     [](const C& c) { return std::optional(c.name); }});
        f.push_back({"geometry.n_sites",
                     [](C& c, const std::string& v) {
                         reject_tag("geometry.n_sites", v);
                         c.n_sites = parse_integer<int>("geometry.n_sites", v);
                     },
                     [](const C& c) { return std::optional(std::to_string(c.n_sites)); }});
        f.push_back(quantity_field("geometry.lattice_r", &C::lattice_r, Dim::Length));
        f.push_back(quantity_field("geometry.detector_offset_y", &C::detector_offset_y, Dim::Length));
        f.push_back(quantity_field("params.c3", &C::c3, Dim::Frequency));
        f.push_back(quantity_field("params.c6_s", &C::c6_s, Dim::Frequency));
        f.push_back(quantity_field("params.c4_p", &C::c4_p, Dim::Frequency));
        f.push_back(quantity_field("params.omega_p0", &C::omega_p0, Dim::Frequency));
        f.push_back(quantity_field("params.omega_c", &C::omega_c, Dim::Frequency));
        f.push_back(quantity_field("params.gamma_p", &C::gamma_p, Dim::Frequency));
        f.push_back(quantity_field("params.probe_ratio", &C::probe_ratio, Dim::Ratio));
        f.push_back(quantity_field("profile.omega_min", &C::omega_min, Dim::Frequency));
        f.push_back(quantity_field("profile.omega_max", &C::omega_max, Dim::Frequency));
        f.push_back(quantity_field("profile.sigma_c", &C::sigma_c, Dim::Length));
        f.push_back(quantity_field("profile.w", &C::w, Dim::Length));
        f.push_back({"profile.target_period",
                     [](C& c, const std::string& v) {
                         c.target_period = parse_quantity("profile.target_period", v, Dim::Time);
                     },
                     [](const C& c) -> std::optional<std::string> {
                         if (!c.target_period) return std::nullopt;
                         return format_quantity(*c.target_period);
                     }});
        f.push_back({"probe.mode",
                     [](C& c, const std::string& v) {
                         if (v == "train") c.mode = ProbeMode::Train;
                         else if (v == "schedule") c.mode = ProbeMode::Schedule;
                         else if (v == "none") c.mode = ProbeMode::None;
                         else throw ConfigError("probe.mode: expected train, schedule or none");
                     },
                     [](const C& c) { return std::optional(std::string(to_string(c.mode))); }});
        f.push_back({"probe.launch",
                     [](C& c, const std::string& v) {
                         std::string text = v;
                         std::replace(text.begin(), text.end(), ',', ' ');
                         auto tokens = split_ws(text);
                         if (tokens.empty()) throw ConfigError("probe.launch: empty list");
                         if (tokens.size() == 1 || looks_numeric(tokens.back()))
                             throw ConfigError("probe.launch: positions need a unit tag (um)");
                         parse_tag("probe.launch", tokens.back(), Dim::Length);
                         tokens.pop_back();
                         c.launch_um.clear();
                         for (const auto& t : tokens) c.launch_um.push_back(parse_number("probe.launch", t));
                     },
                     [](const C& c) -> std::optional<std::string> {
                         if (c.launch_um.empty()) return std::nullopt;
                         std::string s;
                         for (double x : c.launch_um) s += format_number(x) + ", ";
                         s.erase(s.size() - 2);
                         return s + " um";
                     }});
        f.push_back(quantity_field("probe.sigma_p", &C::sigma_p, Dim::Length));
        f.push_back({"probe.schedule",
                     [](C& c, const std::string& v) { c.schedule = v; },
                     [](const C& c) -> std::optional<std::string> {
                         if (c.schedule.empty()) return std::nullopt;
                         return c.schedule;
                     }});
        f.push_back({"probe.schedule_file",
                     [](C& c, const std::string& v) { c.schedule_file = v; },
                     [](const C& c) -> std::optional<std::string> {
                         if (c.schedule_file.empty()) return std::nullopt;
                         return c.schedule_file;
                     }});
        f.push_back(quantity_field("disorder.sigma_trap", &C::sigma_trap, Dim::Length));
        f.push_back({"disorder.dims",
                     [](C& c, const std::string& v) {
                         try {
                             c.dims = DisorderSpec::parse_dims(v);
                         } catch (const ParseError& e) {
                             throw ConfigError(std::string("disorder.dims: ") + e.what());
                         }
                     },
                     [](const C& c) {
                         DisorderSpec d;
                         d.dims = c.dims;
                         return std::optional(d.dims_string());
                     }});
        f.push_back({"disorder.seed",
                     [](C& c, const std::string& v) {
                         reject_tag("disorder.seed", v);
                         c.seed = parse_integer<std::uint64_t>("disorder.seed", v);
                     },
                     [](const C& c) { return std::optional(std::to_string(c.seed)); }});
        f.push_back({"disorder.realizations",
                     [](C& c, const std::string& v) {
                         reject_tag("disorder.realizations", v);
                         c.realizations = parse_integer<std::size_t>("disorder.realizations", v);
                     },
                     [](const C& c) { return std::optional(std::to_string(c.realizations)); }});
        f.push_back(quantity_field("run.t_final", &C::t_final, Dim::Time));
        f.push_back(quantity_field("run.dt", &C::dt, Dim::Time));
        f.push_back(quantity_field("run.output_dt", &C::output_dt, Dim::Time));
        f.push_back({"run.initial_site",
                     [](C& c, const std::string& v) {
                         reject_tag("run.initial_site", v);
                         c.initial_site = parse_integer<int>("run.initial_site", v);
                     },
                     [](const C& c) { return std::optional(std::to_string(c.initial_site)); }});
        f.push_back({"run.target_site",
                     [](C& c, const std::string& v) {
                         reject_tag("run.target_site", v);
                         c.target_site = parse_integer<int>("run.target_site", v);
                     },
                     [](const C& c) { return std::optional(std::to_string(c.target_site)); }});
        f.push_back({"run.include_h_eff",
                     [](C& c, const std::string& v) { c.include_h_eff = parse_bool("run.include_h_eff", v); },
                     [](const C& c) { return std::optional(std::string(c.include_h_eff ? "true" : "false")); }});
        return f;
    }();
    return table;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
    std::map<std::string, const Field*> by_key;
    for (const auto& f : fields()) by_key[f.key] = &f;

    ScenarioConfig config;
    std::set<std::string> seen;
    std::istringstream lines{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(lines, raw)) {
        ++line_no;
        const std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        const auto it = by_key.find(key);
        if (it == by_key.end()) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (!seen.insert(key).second)
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": '" + key + "' has no value");
        it->second->set(config, value);
    }
    return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    ScenarioConfig config = parse_config(buffer.str());
    if (!config.schedule_file.empty()) {
        const std::filesystem::path sched(config.schedule_file);
        if (sched.is_relative()) config.schedule_file = (path.parent_path() / sched).lexically_normal().string();
    }
    return config;
}

std::string serialize(const ScenarioConfig& config) {
    std::string out;
    for (const auto& f : fields()) {
        if (auto v = f.get(config)) out += f.key + " = " + *v + "\n";
    }
    return out;
}

namespace {

std::string read_schedule_text(const ScenarioConfig& c) {
    if (!c.schedule.empty()) return c.schedule;
    std::ifstream in(c.schedule_file);
    if (!in) throw ConfigError("schedule file '" + c.schedule_file + "' does not exist");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

std::vector<std::string> validate(const ScenarioConfig& c) {
    if (c.n_sites < 2) throw ConfigError("geometry.n_sites must be at least 2");
    if (!(c.lattice_r.value > 0.0)) throw ConfigError("geometry.lattice_r must be positive");
    if (!(c.t_final.value > 0.0)) throw ConfigError("run.t_final must be positive");
    if (!(c.dt.value > 0.0)) throw ConfigError("run.dt must be positive");
    if (!(c.output_dt.value > 0.0)) throw ConfigError("run.output_dt must be positive");
    if (c.dt.value > c.output_dt.value) throw ConfigError("run.dt must not exceed run.output_dt");
    if (c.initial_site < 1 || c.initial_site > c.n_sites)
        throw ConfigError("run.initial_site must lie in [1, " + std::to_string(c.n_sites) + "]");
    if (c.target_site < 1 || c.target_site > c.n_sites)
        throw ConfigError("run.target_site must lie in [1, " + std::to_string(c.n_sites) + "]");
    if (c.realizations < 1) throw ConfigError("disorder.realizations must be at least 1");
    if (c.sigma_trap.value < 0.0) throw ConfigError("disorder.sigma_trap must be non-negative");
    if (c.target_period && !(c.target_period->value > 0.0))
        throw ConfigError("profile.target_period must be positive");
    if (c.sigma_c.value < 0.0 || c.w.value < 0.0) throw ConfigError("profile.sigma_c and profile.w must be non-negative");

    std::vector<std::string> warnings;
    try {
        warnings = c.physical_params().validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
    }

    switch (c.mode) {
        case ProbeMode::Train:
            if (c.launch_um.empty()) throw ConfigError("probe.launch is required in train mode");
            if (!(c.sigma_p.value > 0.0)) throw ConfigError("probe.sigma_p must be positive");
            if (!(c.omega_min.value > 0.0)) throw ConfigError("profile.omega_min must be positive in train mode");
            break;
        case ProbeMode::Schedule: {
            if (c.schedule.empty() && c.schedule_file.empty())
                throw ConfigError("schedule mode needs probe.schedule or probe.schedule_file");
            if (!c.schedule.empty() && !c.schedule_file.empty())
                throw ConfigError("give either probe.schedule or probe.schedule_file, not both");
            try {
                const auto ops = parse_schedule(read_schedule_text(c));
                if (ops.empty()) throw ConfigError("schedule has no instructions");
                compile_switch(ops, rabi_period(c.lattice_r.internal(), c.c3.internal()), c.n_sites, 1.0);
            } catch (const ParseError& e) {
                throw ConfigError(std::string("probe schedule: ") + e.what());
            } catch (const InvalidInstruction& e) {
                throw ConfigError(std::string("probe schedule: ") + e.what());
            } catch (const InvalidParameter& e) {
                throw ConfigError(std::string("probe schedule: ") + e.what());
            }
            break;
        }
        case ProbeMode::None:
            break;
    }
    if (c.mode != ProbeMode::Train && !c.launch_um.empty())
        warnings.push_back("probe.launch is ignored outside train mode");
    if (c.detector_offset_y.value == 0.0)
        throw ConfigError("geometry.detector_offset_y = 0 puts every detector on its aggregate atom");
    return warnings;
}

// ---------------------------------------------------------------------------
// Presets

std::vector<SwitchOp> switching_sequence(double off_duration_us) {
    return {{SwitchKind::Off, 3, off_duration_us}, {SwitchKind::OnLeft, 3, 0.0},
            {SwitchKind::Off, 2, off_duration_us}, {SwitchKind::OnRight, 2, 0.0},
            {SwitchKind::OnRight, 3, 0.0},         {SwitchKind::Off, 4, off_duration_us}};
}

std::vector<std::string> preset_names() { return {"transport2", "transport4", "switching", "baseline"}; }

namespace {

// Readout at the close of the fourth guided transfer, before the trailing
// pulse starts blocking the last site.
constexpr double kTransportReadout = 4.8;

}  // namespace

ScenarioConfig preset(std::string_view name) {
    ScenarioConfig c;
    c.name = std::string(name);
    c.t_final = {kTransportReadout, UnitTag::Microsecond};
    if (name == "transport2") {
        c.launch_um = {-21.5, 38.5};
    } else if (name == "transport4") {
        c.launch_um = {-41.5, -21.5, 38.5, 58.5};
    } else if (name == "switching") {
        const auto ops = switching_sequence();
        const double t_period = rabi_period(c.lattice_r.internal(), c.c3.internal());
        c.mode = ProbeMode::Schedule;
        c.schedule = format_schedule(ops, "; ");
        c.initial_site = 3;
        c.target_site = 4;
        c.t_final = {compile_switch(ops, t_period, c.n_sites, 1.0).duration(), UnitTag::Microsecond};
    } else if (name == "baseline") {
        c.mode = ProbeMode::None;
    } else {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Simulation

Simulation::Simulation(ScenarioConfig config) : config_(std::move(config)) {
    warnings_ = validate(config_);
    params_ = config_.physical_params();
    geometry_ = migsim::nominal_geometry(config_.n_sites, config_.lattice_r.internal(),
                                         config_.detector_offset_y.internal());
    profile_ = config_.coupling_profile();
    t_period_ = rabi_period(geometry_.lattice_r, params_.c3);
    grid_ = uniform_grid(config_.t_final.internal(), config_.output_dt.internal());

    const double target = config_.target_period ? config_.target_period->internal() : t_period_;
    try {
        velocity_ = calibrate_kappa(profile_, target);
    } catch (const CalibrationError& e) {
        if (config_.mode == ProbeMode::Train) throw ConfigError(std::string("velocity calibration: ") + e.what());
    }

    switch (config_.mode) {
        case ProbeMode::Train: {
            PolaritonTrain train{config_.launch_um, config_.sigma_p.internal(), params_.omega_p0};
            PulseTrajectories traj(train, velocity_, profile_, config_.t_final.internal());
            probe_ = std::make_shared<TrainProbe>(std::move(train), std::move(traj));
            break;
        }
        case ProbeMode::Schedule: {
            const auto ops = parse_schedule(read_schedule_text(config_));
            probe_ = std::make_shared<ScheduleProbe>(
                compile_switch(ops, t_period_, config_.n_sites, params_.omega_p0));
            break;
        }
        case ProbeMode::None:
            probe_ = std::make_shared<ScheduleProbe>(SwitchSchedule{});
            break;
    }
}

RunResult Simulation::run(const SystemGeometry& geom, double dt) const {
    EvolveOptions opts;
    opts.include_h_eff = config_.include_h_eff;
    opts.target_site = config_.target_site;
    return evolve(pure_state(config_.n_sites, config_.initial_site), build_h_agg(geom, params_),
                  build_interactions(geom, params_), geom, *probe_, params_, grid_, dt, opts);
}

EnsembleResult Simulation::run_ensemble(std::size_t count, std::uint64_t seed,
                                        const EnsembleOptions& options) const {
    DisorderSpec spec = config_.disorder();
    spec.seed = seed;
    return migsim::run_ensemble(geometry_, [this](const SystemGeometry& g) { return run(g); }, spec, count,
                                options);
}

// ---------------------------------------------------------------------------
// Output

void write_timeseries(std::ostream& out, const std::vector<double>& times,
                      const std::vector<Eigen::VectorXd>& populations,
                      const std::vector<double>& purity) {
    if (times.size() != populations.size() || times.size() != purity.size())
        throw InvalidParameter("time series columns differ in length");
    const Eigen::Index n = populations.empty() ? 0 : populations.front().size();
    out << "t_us";
    for (Eigen::Index i = 1; i <= n; ++i) out << ",rho_" << i << i;
    out << ",purity\n";
    const auto old_precision = out.precision(17);
    for (std::size_t k = 0; k < times.size(); ++k) {
        out << times[k];
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << populations[k](i);
        out << ',' << purity[k] << '\n';
    }
    out.precision(old_precision);
}

std::string summary_json(const ScenarioConfig& config, const Simulation& sim, const EnsembleResult& ens) {
    nlohmann::ordered_json j;
    j["software"] = {{"name", "migsim"}, {"version", std::string(version())}};
    j["scenario"] = config.name;
    j["seed"] = ens.master_seed;
    j["realizations"] = ens.count;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : ens.failures) j["failures"].push_back({{"index", f.index}, {"message", f.message}});
    j["target_site"] = ens.target_site;
    j["t_final_us"] = ens.times.back();
    j["final_fidelity_mean"] = ens.mean_fidelity;
    j["final_fidelity_stderr"] = ens.stderr_fidelity;
    j["final_purity_mean"] = ens.mean_purity.back();
    const Eigen::VectorXd& last = ens.mean_populations.back();
    j["final_populations_mean"] = std::vector<double>(last.data(), last.data() + last.size());
    j["t_period_us"] = sim.t_period();
    j["kappa_rad2_per_us2"] = sim.velocity().kappa;
    j["warnings"] = sim.warnings();
    j["config"] = serialize(config);
    return j.dump(2) + "\n";
}

OutputPaths write_outputs(const std::filesystem::path& dir, const ScenarioConfig& config,
                          const Simulation& sim, const EnsembleResult& ensemble) {
    std::filesystem::create_directories(dir);
    OutputPaths paths{dir / "timeseries.csv", dir / "summary.json"};
    std::ofstream ts(paths.timeseries);
    if (!ts) throw ConfigError("cannot write '" + paths.timeseries.string() + "'");
    write_timeseries(ts, ensemble.times, ensemble.mean_populations, ensemble.mean_purity);
    std::ofstream sm(paths.summary);
    if (!sm) throw ConfigError("cannot write '" + paths.summary.string() + "'");
    sm << summary_json(config, sim, ensemble);
    return paths;
}

std::filesystem::path default_output_dir() {
    if (const char* env = std::getenv("MIGSIM_OUTPUT_DIR"); env && *env) return env;
    return "migsim_out";
}

}  // namespace migsim
