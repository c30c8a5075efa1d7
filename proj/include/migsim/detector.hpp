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

#include <Eigen/Core>

#include "migsim/geometry.hpp"
#include "migsim/params.hpp"
#include "migsim/polariton.hpp"

namespace migsim {

/// Net shift of each detector's u_r level for each exciton position:
/// vbar(a, n) = C4/|r_a - r_n|^4 + sum_{m != n} C6/|r_a - r_m|^6, rad/us.
/// Rows are detectors, columns aggregate sites.
struct InteractionTable {
    Eigen::MatrixXd vbar;
};

/// Throws SingularGeometry when a detector sits on an aggregate atom.
InteractionTable build_interactions(const SystemGeometry& geom, const PhysicalParams& params);

/// Radius inside which an atom with coefficient C breaks detector EIT:
/// (|C| / V_c)^(1/eta). eta must be 4 or 6.
double shadow_radius(double coefficient, int eta, const PhysicalParams& params);

/// Instantaneous diagonals of the reduced operators.
struct EffectiveOperators {
    Eigen::VectorXd h_eff;   ///< N entries, rad/us
    Eigen::MatrixXcd l_eff;  ///< N_det x N; row a is the diagonal of L_eff^(a)
};

/// Probe-independent part of the operators. With Omega_p(a) the probe at
/// detector a:
///   h_eff(n)    = sum_a Omega_p(a)^2 * h_weight(a, n)
///   l_eff(a, n) = Omega_p(a) * l_weight(a, n)
struct EffectiveWeights {
    Eigen::MatrixXd h_weight;   ///< vbar / (Omega_c^2 (1 + (vbar/V_c)^2))
    Eigen::MatrixXcd l_weight;  ///< -1 / (sqrt(Gamma_p) (i + V_c/vbar)), 0 at vbar = 0
};

EffectiveWeights effective_weights(const InteractionTable& table, const PhysicalParams& params);

/// Operators for explicit per-detector probe amplitudes.
EffectiveOperators effective_operators(const InteractionTable& table,
                                       const Eigen::VectorXd& probe_amplitudes,
                                       const PhysicalParams& params);

EffectiveOperators effective_operators(const InteractionTable& table, const ProbeField& probe,
                                       const SystemGeometry& geom, const PhysicalParams& params,
                                       double t);

/// Upper bound on any jump rate |l_eff(a, n)|^2 for probe amplitudes up to
/// probe_peak.
double max_jump_rate(const InteractionTable& table, const PhysicalParams& params,
                     double probe_peak);

}  // namespace migsim
