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

#include <vector>

#include <Eigen/Core>

#include "migsim/detector.hpp"
#include "migsim/geometry.hpp"
#include "migsim/params.hpp"
#include "migsim/polariton.hpp"

namespace migsim {

/// Tolerances every propagated density matrix must respect.
struct InvariantBudget {
    double hermiticity = 1e-10;
    double trace = 1e-8;
    double min_eigenvalue = -1e-9;
};

/// Worst values seen over all sampled times.
struct Diagnostics {
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 1.0;
    long steps = 0;
};

struct RunResult {
    std::vector<double> times;                   ///< us
    std::vector<Eigen::VectorXd> populations;    ///< rho_nn per time
    std::vector<double> purity;                  ///< Tr rho^2 per time
    int target_site = 0;                         ///< 1-based
    double final_fidelity = 0.0;                 ///< rho_tt at the last time
    Eigen::MatrixXcd final_rho;
    std::vector<Eigen::MatrixXcd> states;        ///< only with keep_states
    Diagnostics diagnostics;

    double population(std::size_t sample, int site) const { return populations.at(sample)(site - 1); }
};

struct EvolveOptions {
    bool include_h_eff = true;
    int target_site = 0;  ///< 1-based; 0 means the last site
    bool check_invariants = true;
    /// When false the dt precondition is only reported by max_stable_dt().
    bool enforce_dt_bound = true;
    bool keep_states = false;
    InvariantBudget budget;
};

/// |site><site| for a 1-based site index.
Eigen::MatrixXcd pure_state(int n_sites, int site);

double purity(const Eigen::MatrixXcd& rho);

/// Largest admissible step: 0.1 / max(max row-sum of |H_agg + H_eff|,
/// largest jump rate), using the probe's peak amplitude.
double max_stable_dt(const Eigen::MatrixXd& h_agg, const InteractionTable& table,
                     const ProbeField& probe, const PhysicalParams& params);

/// Integrates the reduced master equation
///   d rho/dt = -i[H_agg + H_eff(t), rho] + sum_a (L_a rho L_a^+ - {L_a^+ L_a, rho}/2)
/// with fixed-step RK4 from t = 0, re-symmetrizing rho after every step.
/// Each interval of t_grid (which must start at 0 and increase) is split
/// into equal substeps no longer than dt. Throws IntegrationFailure when an
/// invariant of `budget` is breached at a sampled time.
RunResult evolve(const Eigen::MatrixXcd& rho0, const Eigen::MatrixXd& h_agg,
                 const InteractionTable& table, const SystemGeometry& geom,
                 const ProbeField& probe, const PhysicalParams& params,
                 const std::vector<double>& t_grid, double dt, const EvolveOptions& options = {});

/// 0, step, 2 step, ... with t_final always included as the last sample.
std::vector<double> uniform_grid(double t_final, double step);

/// Min eigenvalue, trace error and Hermiticity error of rho.
struct StateCheck {
    double trace_error;
    double hermiticity_error;
    double min_eigenvalue;
};
StateCheck check_state(const Eigen::MatrixXcd& rho);

}  // namespace migsim
