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

#include "migsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "migsim/errors.hpp"

namespace migsim {

using cd = std::complex<double>;

Eigen::MatrixXcd pure_state(int n_sites, int site) {
    if (site < 1 || site > n_sites)
        throw InvalidParameter("site " + std::to_string(site) + " is outside the chain");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n_sites, n_sites);
    rho(site - 1, site - 1) = 1.0;
    return rho;
}

double purity(const Eigen::MatrixXcd& rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return rho.cwiseAbs2().sum();
}

StateCheck check_state(const Eigen::MatrixXcd& rho) {
    StateCheck c;
    c.trace_error = std::abs(rho.trace() - cd(1.0));
    c.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

std::vector<double> uniform_grid(double t_final, double step) {
    if (!(t_final > 0.0) || !(step > 0.0)) throw InvalidParameter("grid needs positive t_final and step");
    std::vector<double> grid;
    const auto n = static_cast<long>(std::floor(t_final / step + 1e-9));
    for (long k = 0; k <= n; ++k) grid.push_back(static_cast<double>(k) * step);
    if (t_final - grid.back() > 1e-9 * step) grid.push_back(t_final);
    else grid.back() = t_final;
    return grid;
}

double max_stable_dt(const Eigen::MatrixXd& h_agg, const InteractionTable& table,
                     const ProbeField& probe, const PhysicalParams& params) {
    const double peak = probe.peak();
    double h_norm = 0.0;
    if (h_agg.size() > 0) {
        Eigen::VectorXd diag = Eigen::VectorXd::Zero(h_agg.rows());
        if (table.vbar.size() > 0) {
            const EffectiveWeights w = effective_weights(table, params);
            diag = peak * peak * w.h_weight.cwiseAbs().colwise().sum().transpose();
        }
        h_norm = (h_agg.cwiseAbs().rowwise().sum() + diag).maxCoeff();
    }
    const double rate = std::max(h_norm, max_jump_rate(table, params, peak));
    return rate > 0.0 ? 0.1 / rate : std::numeric_limits<double>::infinity();
}

namespace {

// Right-hand side with every operator diagonal in the site basis. The
// dissipator then acts elementwise:
//   D(rho)_nm = rho_nm * sum_a p_a^2 (w_an w_am^* - |w_an|^2/2 - |w_am|^2/2).
// The bracket is fixed per detector, so it is tabulated once.
class Generator {
public:
    Generator(const Eigen::MatrixXd& h_agg, const InteractionTable& table,
              const SystemGeometry& geom, const ProbeField& probe, const PhysicalParams& params,
              bool include_h_eff)
        : h_agg_(h_agg.cast<cd>()),
          weights_(effective_weights(table, params)),
          geom_(geom),
          probe_(probe),
          include_h_eff_(include_h_eff),
          amps_(table.vbar.rows()),
          h_(h_agg_),
          d_(h_agg.rows(), h_agg.rows()) {
        const Eigen::Index n = h_agg.rows();
        for (Eigen::Index a = 0; a < amps_.size(); ++a) {
            const Eigen::RowVectorXcd w = weights_.l_weight.row(a);
            const Eigen::RowVectorXd half = 0.5 * w.cwiseAbs2();
            Eigen::MatrixXcd m(n, n);
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index i = 0; i < n; ++i)
                    m(i, j) = w(i) * std::conj(w(j)) - half(i) - half(j);
            bracket_.push_back(std::move(m));
        }
    }

    void operator()(const Eigen::MatrixXcd& rho, double t, Eigen::MatrixXcd& out) {
        for (Eigen::Index a = 0; a < amps_.size(); ++a)
            amps_(a) = probe_.value(static_cast<std::size_t>(a), geom_.detector_pos[a], t);

        h_ = h_agg_;
        if (include_h_eff_ && amps_.size() > 0)
            h_.diagonal() += (weights_.h_weight.transpose() * amps_.cwiseAbs2()).cast<cd>();

        out.noalias() = cd(0.0, -1.0) * (h_ * rho);
        out.noalias() += cd(0.0, 1.0) * (rho * h_);

        d_.setZero();
        bool any = false;
        for (Eigen::Index a = 0; a < amps_.size(); ++a) {
            const double p2 = amps_(a) * amps_(a);
            if (p2 == 0.0) continue;
            d_ += p2 * bracket_[static_cast<std::size_t>(a)];
            any = true;
        }
        if (any) out += rho.cwiseProduct(d_);
    }

private:
    Eigen::MatrixXcd h_agg_;
    EffectiveWeights weights_;
    const SystemGeometry& geom_;
    const ProbeField& probe_;
    bool include_h_eff_;
    Eigen::VectorXd amps_;
    std::vector<Eigen::MatrixXcd> bracket_;
    Eigen::MatrixXcd h_;
    Eigen::MatrixXcd d_;
};

}  // namespace

RunResult evolve(const Eigen::MatrixXcd& rho0, const Eigen::MatrixXd& h_agg,
                 const InteractionTable& table, const SystemGeometry& geom,
                 const ProbeField& probe, const PhysicalParams& params,
                 const std::vector<double>& t_grid, double dt, const EvolveOptions& options) {
    const Eigen::Index n = h_agg.rows();
    if (rho0.rows() != n || rho0.cols() != n) throw InvalidParameter("rho0 does not match H_agg");
    if (table.vbar.cols() != n && table.vbar.size() != 0)
        throw InvalidParameter("interaction table does not match H_agg");
    if (static_cast<std::size_t>(table.vbar.rows()) > geom.detector_pos.size())
        throw InvalidParameter("interaction table has more detectors than the geometry");
    if (t_grid.empty() || t_grid.front() != 0.0) throw InvalidParameter("t_grid must start at 0");
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1])) throw InvalidParameter("t_grid must be strictly increasing");
    if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
    if (options.enforce_dt_bound) {
        const double bound = max_stable_dt(h_agg, table, probe, params);
        if (dt > bound * (1.0 + 1e-12))
            throw InvalidParameter("dt = " + std::to_string(dt) + " us exceeds the stability bound " +
                                   std::to_string(bound) + " us");
    }
    const int target = options.target_site == 0 ? static_cast<int>(n) : options.target_site;
    if (target < 1 || target > n) throw InvalidParameter("target site outside the chain");

    Generator rhs(h_agg, table, geom, probe, params, options.include_h_eff);
    RunResult result;
    result.target_site = target;

    Eigen::MatrixXcd rho = rho0;
    Eigen::MatrixXcd k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);

    auto sample = [&](double t) {
        if (options.check_invariants) {
            const StateCheck c = check_state(rho);
            auto& d = result.diagnostics;
            d.max_trace_error = std::max(d.max_trace_error, c.trace_error);
            d.max_hermiticity_error = std::max(d.max_hermiticity_error, c.hermiticity_error);
            d.min_eigenvalue = std::min(d.min_eigenvalue, c.min_eigenvalue);
            if (!(c.trace_error <= options.budget.trace))
                throw IntegrationFailure("trace drifted by " + std::to_string(c.trace_error), t);
            if (!(c.hermiticity_error <= options.budget.hermiticity))
                throw IntegrationFailure("density matrix lost Hermiticity", t);
            if (!(c.min_eigenvalue >= options.budget.min_eigenvalue))
                throw IntegrationFailure("negative eigenvalue " + std::to_string(c.min_eigenvalue), t);
        }
        result.times.push_back(t);
        result.populations.push_back(rho.diagonal().real());
        result.purity.push_back(purity(rho));
        if (options.keep_states) result.states.push_back(rho);
    };

    // Integration nodes: the output grid plus every probe discontinuity.
    std::vector<std::pair<double, bool>> nodes;  // (time, sampled)
    for (double tg : t_grid) nodes.emplace_back(tg, true);
    for (double b : probe.breakpoints())
        if (b > 0.0 && b < t_grid.back()) nodes.emplace_back(b, false);
    std::sort(nodes.begin(), nodes.end());

    sample(0.0);
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        const double t0 = nodes[k - 1].first;
        const double span = nodes[k].first - t0;
        if (span > 1e-12) {
            const auto substeps = static_cast<long>(std::ceil(span / dt - 1e-9));
            const double h = span / static_cast<double>(substeps);
            for (long s = 0; s < substeps; ++s) {
                const double t = t0 + static_cast<double>(s) * h;
                rhs(rho, t, k1);
                tmp = rho + (0.5 * h) * k1;
                rhs(tmp, t + 0.5 * h, k2);
                tmp = rho + (0.5 * h) * k2;
                rhs(tmp, t + 0.5 * h, k3);
                tmp = rho + h * k3;
                // Evaluate the endpoint just inside the step so a switch-on
                // at t + h does not leak into this step.
                rhs(tmp, std::nextafter(t + h, t), k4);
                rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                tmp = 0.5 * (rho + rho.adjoint());
                rho = tmp;
                ++result.diagnostics.steps;
            }
        }
        if (nodes[k].second) sample(nodes[k].first);
    }

    result.final_rho = rho;
    result.final_fidelity = result.populations.back()(target - 1);
    return result;
}

}  // namespace migsim
