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

#include "migsim/detector.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "migsim/errors.hpp"

namespace migsim {

InteractionTable build_interactions(const SystemGeometry& geom, const PhysicalParams& params) {
    const auto n_det = static_cast<Eigen::Index>(geom.detector_pos.size());
    const auto n = static_cast<Eigen::Index>(geom.aggregate_pos.size());

    // Squared distances first; every entry reuses them.
    Eigen::MatrixXd d2(n_det, n);
    for (Eigen::Index a = 0; a < n_det; ++a) {
        for (Eigen::Index m = 0; m < n; ++m) {
            d2(a, m) = (geom.detector_pos[a] - geom.aggregate_pos[m]).squaredNorm();
            if (d2(a, m) == 0.0)
                throw SingularGeometry("detector " + std::to_string(a + 1) +
                                       " coincides with aggregate atom " + std::to_string(m + 1));
        }
    }

    InteractionTable table{Eigen::MatrixXd::Zero(n_det, n)};
    for (Eigen::Index a = 0; a < n_det; ++a) {
        double s_total = 0.0;
        for (Eigen::Index m = 0; m < n; ++m) s_total += params.c6_s / std::pow(d2(a, m), 3);
        for (Eigen::Index nn = 0; nn < n; ++nn) {
            const double own_s = params.c6_s / std::pow(d2(a, nn), 3);
            table.vbar(a, nn) = params.c4_p / (d2(a, nn) * d2(a, nn)) + (s_total - own_s);
        }
    }
    return table;
}

double shadow_radius(double coefficient, int eta, const PhysicalParams& params) {
    if (eta != 4 && eta != 6) throw InvalidParameter("shadow radius exponent must be 4 or 6");
    return std::pow(std::abs(coefficient) / v_c(params), 1.0 / eta);
}

EffectiveWeights effective_weights(const InteractionTable& table, const PhysicalParams& params) {
    if (!(params.omega_c > 0.0)) throw InvalidParameter("omega_c must be positive");
    const double vc = v_c(params);
    const double sqrt_gamma = std::sqrt(params.gamma_p);
    const std::complex<double> i(0.0, 1.0);

    EffectiveWeights w;
    w.h_weight.resize(table.vbar.rows(), table.vbar.cols());
    w.l_weight.resize(table.vbar.rows(), table.vbar.cols());
    for (Eigen::Index a = 0; a < table.vbar.rows(); ++a) {
        for (Eigen::Index n = 0; n < table.vbar.cols(); ++n) {
            const double v = table.vbar(a, n);
            const double x = v / vc;
            w.h_weight(a, n) = v / (params.omega_c * params.omega_c * (1.0 + x * x));
            w.l_weight(a, n) = v == 0.0 ? std::complex<double>(0.0)
                                        : -1.0 / (sqrt_gamma * (i + vc / v));
        }
    }
    return w;
}

EffectiveOperators effective_operators(const InteractionTable& table,
                                       const Eigen::VectorXd& probe_amplitudes,
                                       const PhysicalParams& params) {
    if (probe_amplitudes.size() != table.vbar.rows())
        throw InvalidParameter("one probe amplitude per detector expected");
    const EffectiveWeights w = effective_weights(table, params);
    EffectiveOperators ops;
    ops.h_eff = w.h_weight.transpose() * probe_amplitudes.cwiseAbs2();
    ops.l_eff = probe_amplitudes.cast<std::complex<double>>().asDiagonal() * w.l_weight;
    return ops;
}

EffectiveOperators effective_operators(const InteractionTable& table, const ProbeField& probe,
                                       const SystemGeometry& geom, const PhysicalParams& params,
                                       double t) {
    Eigen::VectorXd amps(table.vbar.rows());
    for (Eigen::Index a = 0; a < amps.size(); ++a)
        amps(a) = probe.value(static_cast<std::size_t>(a), geom.detector_pos.at(a), t);
    return effective_operators(table, amps, params);
}

double max_jump_rate(const InteractionTable& table, const PhysicalParams& params,
                     double probe_peak) {
    if (table.vbar.size() == 0) return 0.0;
    const EffectiveWeights w = effective_weights(table, params);
    return probe_peak * probe_peak * w.l_weight.cwiseAbs2().maxCoeff();
}

}  // namespace migsim
