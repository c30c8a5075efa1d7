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

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace migsim {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Vacuum speed of light in um/us (numerically equal to m/s).
constexpr double kSpeedOfLight = 299792458.0;

// Internal units: lengths in um, times in us, every Rabi frequency, rate and
// dispersion coefficient as an angular frequency in rad/us (times um^k for
// the coefficients). Spectroscopic inputs are quoted as value/2pi.
enum class UnitTag {
    Per2piMHz,
    Per2piKHz,
    Micrometre,
    Microsecond,
    Dimensionless,
};

/// Parses a config-file unit token ("per2pi_MHz", "per2pi_kHz", "um", "us",
/// "dimensionless"). Throws ParseError on anything else.
UnitTag unit_tag_from_string(std::string_view token);
std::string_view to_string(UnitTag tag);

double from_config_units(double value, UnitTag tag);
double to_config_units(double internal, UnitTag tag);

struct PhysicalParams {
    double c3 = 0.0;           ///< hopping coefficient, rad/us um^3
    double c6_s = 0.0;         ///< u_r-s van der Waals coefficient, rad/us um^6 (signed)
    double c4_p = 0.0;         ///< u_r-p coefficient, rad/us um^4 (signed)
    double omega_p0 = 0.0;     ///< peak probe Rabi frequency at the detectors
    double omega_c = 0.0;      ///< detector ladder-EIT coupling Rabi frequency
    double gamma_p = 0.0;      ///< decay rate of the detector intermediate state
    double probe_ratio = 2.5;  ///< detector / carrier probe amplitude ratio

    /// Parameter set of the guided-transport experiments. The detector probe
    /// peak is 2.5 x 18 MHz; the carrier polariton peak is the 18 MHz.
    static PhysicalParams reference_defaults();

    /// Throws InvalidParameter when a hard invariant is broken; returns
    /// human-readable warnings for soft ones (probe close to the coupling).
    std::vector<std::string> validate() const;
};

/// EIT linewidth scale Omega_c^2 / (2 Gamma_p).
double v_c(const PhysicalParams& params);

/// Peak Rabi frequency of the carrier (polariton) probe.
double carrier_probe_peak(const PhysicalParams& params);

}  // namespace migsim
