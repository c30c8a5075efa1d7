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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "migsim/geometry.hpp"
#include "migsim/params.hpp"

namespace migsim {

// ---------------------------------------------------------------------------
// Carrier-medium coupling profile and slow-light propagation
// ---------------------------------------------------------------------------

/// Square-wave coupling field with tanh flanks: plateaus of Omega_max
/// centred between lattice sites (half width w), Omega_min around every site.
struct CouplingProfile {
    double omega_min = 0.0;  ///< rad/us
    double omega_max = 0.0;  ///< rad/us
    double sigma_c = 0.0;    ///< flank sharpness, um
    double w = 0.0;          ///< plateau half width, um
    int n_sites = 0;
    double lattice_r = 0.0;

    /// 0.5 kHz / 5.28 kHz plateaus, sigma_c = 1 um, w = 3R/8.
    static CouplingProfile standard(int n_sites, double lattice_r);
};

/// Coupling Rabi frequency at position x. sigma_c == 0 gives the ideal
/// square wave.
double coupling_at(const CouplingProfile& profile, double x);

/// Dark-state polariton group velocity c * Omega^2 / (Omega^2 + kappa), where
/// kappa stands for the collective carrier coupling g^2 * density.
struct VelocityModel {
    double kappa = 0.0;                 ///< rad^2/us^2
    double c_light = kSpeedOfLight;     ///< um/us
};

double group_velocity(const VelocityModel& vm, const CouplingProfile& profile, double x);

/// Time to cross one lattice cell [0, R] under the given velocity model.
double cell_traversal_time(const VelocityModel& vm, const CouplingProfile& profile);

/// Solves for kappa so that one lattice cell is crossed in target_period.
/// Throws CalibrationError if the target cannot be bracketed.
VelocityModel calibrate_kappa(const CouplingProfile& profile, double target_period,
                              double c_light = kSpeedOfLight);

struct PolaritonTrain {
    std::vector<double> initial_positions;  ///< um
    double sigma_p = 0.0;                   ///< um
    double omega_p0 = 0.0;                  ///< rad/us at each pulse centre
};

/// Pulse-centre trajectories x_n(t) of a train, tabulated once on a uniform
/// knot grid from an adaptive Runge-Kutta integration of dx/dt = v_g(x) and
/// interpolated with cubic Hermite polynomials (the derivative at each knot
/// is v_g itself).
class PulseTrajectories {
public:
    PulseTrajectories(const PolaritonTrain& train, const VelocityModel& vm,
                      const CouplingProfile& profile, double t_end, double knot_dt = 5e-4);

    std::size_t pulse_count() const { return knots_.size(); }
    double t_end() const { return t_end_; }
    double knot_dt() const { return knot_dt_; }

    /// Centre of every pulse at time t, in launch order. t is clamped to
    /// [0, t_end].
    std::vector<double> positions(double t) const;
    double position(std::size_t pulse, double t) const;

private:
    VelocityModel vm_;
    CouplingProfile profile_;
    double knot_dt_;
    double t_end_;
    std::vector<std::vector<double>> knots_;      // [pulse][knot] position
    std::vector<std::vector<double>> velocity_;   // [pulse][knot] dx/dt
};

/// Pulse centres at time t (convenience wrapper over PulseTrajectories).
std::vector<double> propagate_train(const PolaritonTrain& train, const VelocityModel& vm,
                                    const CouplingProfile& profile, double t);

// ---------------------------------------------------------------------------
// Probe fields seen by the detector atoms
// ---------------------------------------------------------------------------

/// Probe Rabi amplitude at a detector. The dynamics only ever calls value(),
/// so train- and schedule-backed fields are interchangeable.
class ProbeField {
public:
    virtual ~ProbeField() = default;

    /// Amplitude (rad/us, >= 0) at detector `detector` located at x, time t.
    virtual double value(std::size_t detector, const Point& x, double t) const = 0;

    /// Upper bound of value() over all detectors and times.
    virtual double peak() const = 0;

    /// Times where value() jumps; integrators step onto them exactly.
    virtual std::vector<double> breakpoints() const { return {}; }
};

/// Gaussian pulse train: sum_n Omega_p0 exp(-(x - x_n(t))^2 / (2 sigma_p^2)),
/// x-coordinate only.
class TrainProbe final : public ProbeField {
public:
    TrainProbe(PolaritonTrain train, PulseTrajectories trajectories);

    double value(std::size_t detector, const Point& x, double t) const override;
    double peak() const override;

    const PolaritonTrain& train() const { return train_; }
    const PulseTrajectories& trajectories() const { return trajectories_; }

private:
    PolaritonTrain train_;
    PulseTrajectories trajectories_;
    double peak_ = 0.0;
};

struct SwitchInterval {
    double t_start = 0.0;
    double t_end = 0.0;
    std::vector<int> detectors;  ///< 0-based detector indices
    double amplitude = 0.0;
};

struct SwitchSchedule {
    std::vector<SwitchInterval> intervals;

    double duration() const;
    /// Throws InvalidInstruction when an interval is empty or two intervals
    /// drive the same detector at the same time.
    void validate() const;
};

/// Piecewise-constant probe driven by a schedule; intervals are half-open
/// [t_start, t_end).
class ScheduleProbe final : public ProbeField {
public:
    explicit ScheduleProbe(SwitchSchedule schedule);

    double value(std::size_t detector, const Point& x, double t) const override;
    double peak() const override;
    std::vector<double> breakpoints() const override;

    const SwitchSchedule& schedule() const { return schedule_; }

private:
    SwitchSchedule schedule_;
};

/// Guiding instructions. `site` is 1-based and names the site holding the
/// exciton when the instruction starts.
enum class SwitchKind { Off, OnLeft, OnRight };

struct SwitchOp {
    SwitchKind kind = SwitchKind::Off;
    int site = 1;
    double duration = 0.0;  ///< us; only meaningful for Off

    bool operator==(const SwitchOp&) const = default;
};

std::string_view to_string(SwitchKind kind);

/// Blocked (probed) sites, 1-based, for one instruction on an n_sites chain:
///   OFF(n)  -> every site except n
///   ON_L(n) -> every site except n and n-1
///   ON_R(n) -> every site except n and n+1
/// Throws InvalidInstruction for moves off the chain end or sites outside it.
std::vector<int> blocked_sites(const SwitchOp& op, int n_sites);

/// Lays the instructions end to end from t = 0. ON_L/ON_R last exactly
/// t_period; OFF lasts op.duration.
SwitchSchedule compile_switch(const std::vector<SwitchOp>& ops, double t_period, int n_sites,
                              double amplitude);

/// Parses schedule text: one `<op> <site> [duration_us]` per line, op in
/// {OFF, ON_L, ON_R}, '#' starts a comment, ';' also separates instructions.
/// OFF needs a duration; ON_L/ON_R take none (they run one transfer period).
std::vector<SwitchOp> parse_schedule(std::string_view text);
std::string format_schedule(const std::vector<SwitchOp>& ops, std::string_view separator = "\n");

}  // namespace migsim
