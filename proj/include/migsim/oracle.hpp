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
#include <vector>

#include <Eigen/Core>

#include "migsim/dynamics.hpp"
#include "migsim/geometry.hpp"
#include "migsim/params.hpp"
#include "migsim/polariton.hpp"

namespace migsim {

/// Refuses full models above this dimension (N * 3^N_det).
inline constexpr std::size_t kDefaultFullDimensionCap = 162;

struct FullModelOptions {
    std::size_t max_dimension = kDefaultFullDimensionCap;
    int target_site = 0;  ///< 1-based; 0 means the last site
    bool check_invariants = true;
    bool keep_states = false;
    InvariantBudget budget;
};

/// N * 3^N_det, or SIZE_MAX on overflow.
std::size_t full_dimension(int n_sites, int n_detectors);

/// Integrates the un-reduced master equation with every detector of `geom`
/// kept as a g/e/u ladder driven by the probe and the coupling beam, starting
/// from |pi_site> x |g...g>, and returns the aggregate state obtained by
/// tracing out the detectors at every grid time. Throws CapacityExceeded
/// above options.max_dimension and InvalidParameter when the probe peak
/// exceeds Omega_c / 2.
RunResult evolve_full(int initial_site, const SystemGeometry& geom, const PhysicalParams& params,
                      const ProbeField& probe, const std::vector<double>& t_grid, double dt,
                      const FullModelOptions& options = {});

/// Half the trace norm of rho_a - rho_b.
double trace_distance(const Eigen::MatrixXcd& rho_a, const Eigen::MatrixXcd& rho_b);

struct OracleReport {
    double ratio = 0.0;  ///< Omega_p / Omega_c
    std::vector<double> times;
    std::vector<double> distance;
    double max_distance = 0.0;
    double mean_distance = 0.0;
};

struct OracleSetup {
    double ratio = 0.2;
    double dt_full = 1e-5;       ///< us
    double dt_effective = 4e-5;  ///< us
    int samples = 500;           ///< output intervals over the run
    double periods = 2.0;        ///< duration in transfer periods
};

/// Two-site chain, only the detector of site 2 present and driven with a
/// constant probe ratio * Omega_c, exciton on site 1 at t = 0. Runs both
/// models on the same grid and reports the trace distance between the
/// aggregate states.
OracleReport compare_models(const PhysicalParams& params, const OracleSetup& setup = {});

}  // namespace migsim
