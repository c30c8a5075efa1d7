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

#include "migsim/polariton.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "migsim/errors.hpp"

namespace migsim {

CouplingProfile CouplingProfile::standard(int n_sites, double lattice_r) {
    CouplingProfile p;
    p.omega_min = from_config_units(0.5, UnitTag::Per2piKHz);
    p.omega_max = from_config_units(5.28, UnitTag::Per2piKHz);
    p.sigma_c = 1.0;
    p.w = 3.0 * lattice_r / 8.0;
    p.n_sites = n_sites;
    p.lattice_r = lattice_r;
    return p;
}

namespace {

double step(double u, double sigma) {
    if (sigma == 0.0) return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
    return std::tanh(u / sigma);
}

}  // namespace

double coupling_at(const CouplingProfile& profile, double x) {
    double sum = 0.0;
    // Plateaus centred at (n - 1/2) R for n = -2 .. N+1, with site 1 at x = 0.
    for (int n = -2; n <= profile.n_sites + 1; ++n) {
        const double centre = (n - 0.5) * profile.lattice_r;
        sum += step(x - centre + profile.w, profile.sigma_c) -
               step(x - centre - profile.w, profile.sigma_c);
    }
    return profile.omega_min + 0.5 * (profile.omega_max - profile.omega_min) * sum;
}

double group_velocity(const VelocityModel& vm, const CouplingProfile& profile, double x) {
    if (vm.kappa < 0.0) throw InvalidParameter("kappa must be non-negative");
    const double o2 = std::pow(coupling_at(profile, x), 2);
    if (o2 == 0.0) return 0.0;
    return vm.c_light * o2 / (o2 + vm.kappa);
}

namespace {

// Integral of 1/Omega^2 over one lattice cell, split at the plateau flanks.
double inverse_square_coupling_integral(const CouplingProfile& profile) {
    using boost::math::quadrature::gauss_kronrod;
    const double r = profile.lattice_r;
    const double a = std::clamp(0.5 * r - profile.w, 0.0, r);
    const double b = std::clamp(0.5 * r + profile.w, 0.0, r);
    auto f = [&](double x) { return 1.0 / std::pow(coupling_at(profile, x), 2); };
    double total = 0.0;
    const double cuts[4] = {0.0, a, b, r};
    for (int k = 0; k < 3; ++k) {
        if (cuts[k + 1] > cuts[k])
            total += gauss_kronrod<double, 61>::integrate(f, cuts[k], cuts[k + 1], 15, 1e-13);
    }
    return total;
}

}  // namespace

double cell_traversal_time(const VelocityModel& vm, const CouplingProfile& profile) {
    // dt = dx / v_g = dx (Omega^2 + kappa) / (c Omega^2)
    return (profile.lattice_r + vm.kappa * inverse_square_coupling_integral(profile)) / vm.c_light;
}

VelocityModel calibrate_kappa(const CouplingProfile& profile, double target_period,
                              double c_light) {
    if (!(target_period > 0.0)) throw CalibrationError("target period must be positive");
    if (!(profile.omega_min > 0.0))
        throw CalibrationError("coupling minimum must be positive for a finite traversal time");

    const double inv_int = inverse_square_coupling_integral(profile);
    auto residual = [&](double kappa) {
        return (profile.lattice_r + kappa * inv_int) / c_light - target_period;
    };

    double lo = 0.0;
    if (residual(lo) > 0.0)
        throw CalibrationError("cell cannot be crossed faster than light: target period too short");
    double hi = 1.0;
    int grow = 0;
    while (residual(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++grow > 2000) throw CalibrationError("no kappa bracket found");
    }

    std::uintmax_t max_iter = 200;
    const auto [k_lo, k_hi] = boost::math::tools::toms748_solve(
        residual, lo, hi, [](double a, double b) { return std::abs(b - a) <= 1e-12 * std::abs(b); },
        max_iter);
    VelocityModel vm;
    vm.kappa = 0.5 * (k_lo + k_hi);
    vm.c_light = c_light;
    return vm;
}

// ---------------------------------------------------------------------------

PulseTrajectories::PulseTrajectories(const PolaritonTrain& train, const VelocityModel& vm,
                                     const CouplingProfile& profile, double t_end, double knot_dt)
    : vm_(vm), profile_(profile), knot_dt_(knot_dt), t_end_(t_end) {
    namespace odeint = boost::numeric::odeint;
    if (!(knot_dt > 0.0)) throw InvalidParameter("trajectory knot spacing must be positive");
    if (!(t_end >= 0.0)) throw InvalidParameter("trajectory end time must be non-negative");

    const auto n_knots = static_cast<std::size_t>(std::ceil(t_end / knot_dt)) + 1;
    using State = std::array<double, 1>;
    auto rhs = [this](const State& x, State& dxdt, double) {
        dxdt[0] = group_velocity(vm_, profile_, x[0]);
    };

    for (double x0 : train.initial_positions) {
        std::vector<double> xs;
        std::vector<double> vs;
        xs.reserve(n_knots);
        vs.reserve(n_knots);
        State state{x0};
        auto stepper = odeint::make_dense_output(1e-12, 1e-12, odeint::runge_kutta_dopri5<State>());
        auto observer = [&](const State& x, double) {
            xs.push_back(x[0]);
            vs.push_back(group_velocity(vm_, profile_, x[0]));
        };
        odeint::integrate_n_steps(stepper, rhs, state, 0.0, knot_dt, n_knots - 1, observer);
        knots_.push_back(std::move(xs));
        velocity_.push_back(std::move(vs));
    }
}

double PulseTrajectories::position(std::size_t pulse, double t) const {
    const auto& xs = knots_.at(pulse);
    const auto& vs = velocity_[pulse];
    t = std::clamp(t, 0.0, knot_dt_ * static_cast<double>(xs.size() - 1));
    auto k = static_cast<std::size_t>(t / knot_dt_);
    if (k + 1 >= xs.size()) return xs.back();
    const double h = knot_dt_;
    const double s = (t - k * h) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * xs[k] + (s3 - 2 * s2 + s) * h * vs[k] +
           (-2 * s3 + 3 * s2) * xs[k + 1] + (s3 - s2) * h * vs[k + 1];
}

std::vector<double> PulseTrajectories::positions(double t) const {
    std::vector<double> out(knots_.size());
    for (std::size_t p = 0; p < knots_.size(); ++p) out[p] = position(p, t);
    return out;
}

std::vector<double> propagate_train(const PolaritonTrain& train, const VelocityModel& vm,
                                    const CouplingProfile& profile, double t) {
    // Knots aligned so that t falls exactly on the last one.
    const double knot_dt = t > 0.0 ? t / std::ceil(t / 5e-4) : 5e-4;
    PulseTrajectories traj(train, vm, profile, t, knot_dt);
    return traj.positions(t);
}

// ---------------------------------------------------------------------------

TrainProbe::TrainProbe(PolaritonTrain train, PulseTrajectories trajectories)
    : train_(std::move(train)), trajectories_(std::move(trajectories)) {
    if (!(train_.sigma_p > 0.0)) throw InvalidParameter("pulse width sigma_p must be positive");
    if (trajectories_.pulse_count() != train_.initial_positions.size())
        throw InvalidParameter("trajectory count does not match the pulse train");
    // Largest field sits at a pulse centre as long as pulses stay apart.
    const double inv = 1.0 / (2.0 * train_.sigma_p * train_.sigma_p);
    const double dt = trajectories_.knot_dt();
    const auto n_knots = static_cast<std::size_t>(std::round(trajectories_.t_end() / dt)) + 1;
    double best = trajectories_.pulse_count() ? 1.0 : 0.0;
    for (std::size_t k = 0; k < n_knots; ++k) {
        const auto xs = trajectories_.positions(static_cast<double>(k) * dt);
        for (double xp : xs) {
            double sum = 0.0;
            for (double xq : xs) sum += std::exp(-(xp - xq) * (xp - xq) * inv);
            best = std::max(best, sum);
        }
    }
    peak_ = train_.omega_p0 * best;
}

double TrainProbe::value(std::size_t, const Point& x, double t) const {
    const double inv = 1.0 / (2.0 * train_.sigma_p * train_.sigma_p);
    double sum = 0.0;
    for (std::size_t p = 0; p < trajectories_.pulse_count(); ++p) {
        const double d = x.x() - trajectories_.position(p, t);
        sum += std::exp(-d * d * inv);
    }
    return train_.omega_p0 * sum;
}

double TrainProbe::peak() const { return peak_; }

double SwitchSchedule::duration() const {
    double end = 0.0;
    for (const auto& iv : intervals) end = std::max(end, iv.t_end);
    return end;
}

void SwitchSchedule::validate() const {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& a = intervals[i];
        if (!(a.t_start < a.t_end)) throw InvalidInstruction("schedule interval has t_start >= t_end");
        if (a.amplitude < 0.0) throw InvalidInstruction("schedule amplitude must be non-negative");
        for (std::size_t j = i + 1; j < intervals.size(); ++j) {
            const auto& b = intervals[j];
            if (a.t_start >= b.t_end || b.t_start >= a.t_end) continue;
            for (int d : a.detectors)
                if (std::find(b.detectors.begin(), b.detectors.end(), d) != b.detectors.end())
                    throw InvalidInstruction("schedule drives detector " + std::to_string(d + 1) +
                                             " twice at the same time");
        }
    }
}

ScheduleProbe::ScheduleProbe(SwitchSchedule schedule) : schedule_(std::move(schedule)) {
    schedule_.validate();
}

double ScheduleProbe::value(std::size_t detector, const Point&, double t) const {
    for (const auto& iv : schedule_.intervals) {
        if (t < iv.t_start || t >= iv.t_end) continue;
        for (int d : iv.detectors)
            if (static_cast<std::size_t>(d) == detector) return iv.amplitude;
    }
    return 0.0;
}

std::vector<double> ScheduleProbe::breakpoints() const {
    std::vector<double> out;
    for (const auto& iv : schedule_.intervals) {
        out.push_back(iv.t_start);
        if (std::isfinite(iv.t_end)) out.push_back(iv.t_end);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double ScheduleProbe::peak() const {
    double m = 0.0;
    for (const auto& iv : schedule_.intervals) m = std::max(m, iv.amplitude);
    return m;
}

// ---------------------------------------------------------------------------

std::string_view to_string(SwitchKind kind) {
    switch (kind) {
        case SwitchKind::Off: return "OFF";
        case SwitchKind::OnLeft: return "ON_L";
        case SwitchKind::OnRight: return "ON_R";
    }
    return "OFF";
}

std::vector<int> blocked_sites(const SwitchOp& op, int n_sites) {
    const int n = op.site;
    if (n < 1 || n > n_sites)
        throw InvalidInstruction("instruction site " + std::to_string(n) + " is outside the chain");
    int keep = n;
    if (op.kind == SwitchKind::OnLeft) {
        if (n == 1) throw InvalidInstruction("ON_L at site 1 would move the exciton off the chain");
        keep = n - 1;
    } else if (op.kind == SwitchKind::OnRight) {
        if (n == n_sites)
            throw InvalidInstruction("ON_R at the last site would move the exciton off the chain");
        keep = n + 1;
    }
    std::vector<int> blocked;
    for (int s = 1; s <= n_sites; ++s)
        if (s != n && s != keep) blocked.push_back(s);
    return blocked;
}

SwitchSchedule compile_switch(const std::vector<SwitchOp>& ops, double t_period, int n_sites,
                              double amplitude) {
    if (!(t_period > 0.0)) throw InvalidParameter("t_period must be positive");
    SwitchSchedule schedule;
    double t = 0.0;
    for (const auto& op : ops) {
        const double duration = op.kind == SwitchKind::Off ? op.duration : t_period;
        if (!(duration > 0.0)) throw InvalidInstruction("OFF instruction needs a positive duration");
        SwitchInterval iv;
        iv.t_start = t;
        iv.t_end = t + duration;
        iv.amplitude = amplitude;
        for (int s : blocked_sites(op, n_sites)) iv.detectors.push_back(s - 1);
        schedule.intervals.push_back(std::move(iv));
        t += duration;
    }
    return schedule;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<SwitchOp> parse_schedule(std::string_view text) {
    std::vector<SwitchOp> ops;
    std::string normalized(text);
    std::replace(normalized.begin(), normalized.end(), ';', '\n');
    std::istringstream lines(normalized);
    std::string raw;
    int line_no = 0;
    while (std::getline(lines, raw)) {
        ++line_no;
        std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
        if (line.empty()) continue;

        std::istringstream fields(line);
        std::string op_token, site_token, duration_token, extra;
        fields >> op_token >> site_token;
        const bool has_duration = static_cast<bool>(fields >> duration_token);
        if (fields >> extra)
            throw ParseError("schedule line " + std::to_string(line_no) + ": too many fields");

        SwitchOp op;
        if (op_token == "OFF") op.kind = SwitchKind::Off;
        else if (op_token == "ON_L") op.kind = SwitchKind::OnLeft;
        else if (op_token == "ON_R") op.kind = SwitchKind::OnRight;
        else throw ParseError("schedule line " + std::to_string(line_no) + ": unknown op '" + op_token + "'");

        auto [p, ec] = std::from_chars(site_token.data(), site_token.data() + site_token.size(), op.site);
        if (ec != std::errc() || p != site_token.data() + site_token.size())
            throw ParseError("schedule line " + std::to_string(line_no) + ": bad site '" + site_token + "'");

        if (op.kind == SwitchKind::Off) {
            if (!has_duration)
                throw ParseError("schedule line " + std::to_string(line_no) + ": OFF needs a duration");
            try {
                std::size_t used = 0;
                op.duration = std::stod(duration_token, &used);
                if (used != duration_token.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError("schedule line " + std::to_string(line_no) + ": bad duration '" +
                                 duration_token + "'");
            }
            if (!(op.duration > 0.0))
                throw ParseError("schedule line " + std::to_string(line_no) + ": duration must be positive");
        } else if (has_duration) {
            throw ParseError("schedule line " + std::to_string(line_no) +
                             ": ON_L/ON_R always last one transfer period");
        }
        ops.push_back(op);
    }
    return ops;
}

std::string format_schedule(const std::vector<SwitchOp>& ops, std::string_view separator) {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i) out << separator;
        out << to_string(ops[i].kind) << ' ' << ops[i].site;
        if (ops[i].kind == SwitchKind::Off) out << ' ' << ops[i].duration;
    }
    return out.str();
}

}  // namespace migsim
