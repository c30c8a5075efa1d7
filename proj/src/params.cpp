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

#include "migsim/params.hpp"

#include <cmath>

#include "migsim/errors.hpp"

namespace migsim {

UnitTag unit_tag_from_string(std::string_view token) {
    if (token == "per2pi_MHz") return UnitTag::Per2piMHz;
    if (token == "per2pi_kHz") return UnitTag::Per2piKHz;
    if (token == "um") return UnitTag::Micrometre;
    if (token == "us") return UnitTag::Microsecond;
    if (token == "dimensionless") return UnitTag::Dimensionless;
    throw ParseError("unknown unit tag '" + std::string(token) + "'");
}

std::string_view to_string(UnitTag tag) {
    switch (tag) {
        case UnitTag::Per2piMHz: return "per2pi_MHz";
        case UnitTag::Per2piKHz: return "per2pi_kHz";
        case UnitTag::Micrometre: return "um";
        case UnitTag::Microsecond: return "us";
        case UnitTag::Dimensionless: return "dimensionless";
    }
    return "dimensionless";
}

double from_config_units(double value, UnitTag tag) {
    switch (tag) {
        case UnitTag::Per2piMHz: return kTwoPi * value;
        case UnitTag::Per2piKHz: return kTwoPi * value * 1e-3;
        default: return value;
    }
}

double to_config_units(double internal, UnitTag tag) {
    switch (tag) {
        case UnitTag::Per2piMHz: return internal / kTwoPi;
        case UnitTag::Per2piKHz: return internal / (kTwoPi * 1e-3);
        default: return internal;
    }
}

PhysicalParams PhysicalParams::reference_defaults() {
    PhysicalParams p;
    p.c3 = from_config_units(1619.0, UnitTag::Per2piMHz);
    p.c6_s = from_config_units(-87.0, UnitTag::Per2piMHz);
    p.c4_p = from_config_units(-1032.0, UnitTag::Per2piMHz);
    p.probe_ratio = 2.5;
    p.omega_p0 = p.probe_ratio * from_config_units(18.0, UnitTag::Per2piMHz);
    p.omega_c = from_config_units(90.0, UnitTag::Per2piMHz);
    p.gamma_p = from_config_units(6.1, UnitTag::Per2piMHz);
    return p;
}

std::vector<std::string> PhysicalParams::validate() const {
    if (!(omega_c > 0.0)) throw InvalidParameter("omega_c must be positive");
    if (!(gamma_p > 0.0)) throw InvalidParameter("gamma_p must be positive");
    if (!(omega_p0 >= 0.0)) throw InvalidParameter("omega_p0 must be non-negative");
    if (!(probe_ratio > 0.0)) throw InvalidParameter("probe_ratio must be positive");
    if (!std::isfinite(c3) || !std::isfinite(c6_s) || !std::isfinite(c4_p))
        throw InvalidParameter("dispersion coefficients must be finite");

    std::vector<std::string> warnings;
    const double ratio = omega_p0 / omega_c;
    if (ratio >= 1.0) {
        warnings.push_back("omega_p0/omega_c >= 1: the reduced master equation is outside its validity regime");
    } else if (ratio > 0.5) {
        warnings.push_back("omega_p0/omega_c > 0.5: reduced master equation accuracy degrades");
    }
    return warnings;
}

double v_c(const PhysicalParams& params) {
    if (!(params.gamma_p > 0.0)) throw InvalidParameter("v_c requires gamma_p > 0");
    return params.omega_c * params.omega_c / (2.0 * params.gamma_p);
}

double carrier_probe_peak(const PhysicalParams& params) {
    return params.omega_p0 / params.probe_ratio;
}

}  // namespace migsim
