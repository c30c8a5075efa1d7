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

#include "migsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include "migsim/aggregate.hpp"
#include "migsim/detector.hpp"
#include "migsim/errors.hpp"

namespace migsim {

using cd = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cd>;

std::size_t full_dimension(int n_sites, int n_detectors) {
    if (n_sites < 0 || n_detectors < 0) return 0;
    std::size_t dim = static_cast<std::size_t>(n_sites);
    for (int k = 0; k < n_detectors; ++k) {
        if (dim > std::numeric_limits<std::size_t>::max() / 3) return std::numeric_limits<std::size_t>::max();
        dim *= 3;
    }
    return dim;
}

double trace_distance(const Eigen::MatrixXcd& rho_a, const Eigen::MatrixXcd& rho_b) {
    if (rho_a.rows() != rho_b.rows() || rho_a.cols() != rho_b.cols())
        throw InvalidParameter("trace_distance needs matrices of equal dimension");
    const Eigen::MatrixXcd diff = rho_a - rho_b;
    const Eigen::MatrixXcd herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

namespace {

// Detector levels g, e, u map to digits 0, 1, 2; detector a carries place
// value 3^(M-1-a) and the aggregate site the leading place value 3^M.
constexpr int kG = 0;
constexpr int kE = 1;
constexpr int kU = 2;

struct FullOperators {
    SpMat h_static;                 // H_agg x 1 + coupling ladder + interaction
    std::vector<SpMat> probe_unit;  // (|g><e| + h.c.)/2 on detector a
    std::vector<SpMat> jump;        // sqrt(Gamma) |g><e| on detector a
    SpMat decay_anti;               // sum_a L^+ L
};

FullOperators build_full(const SystemGeometry& geom, const PhysicalParams& params) {
    const int n = geom.n_sites;
    const int m = static_cast<int>(geom.detector_pos.size());
    const Eigen::MatrixXd h_agg = build_h_agg(geom, params);
    const InteractionTable table = build_interactions(geom, params);

    std::vector<long> place(m);
    long block = 1;
    for (int a = m - 1; a >= 0; --a) {
        place[a] = block;
        block *= 3;
    }
    const long dim = static_cast<long>(n) * block;
    auto digit = [&](long idx, int a) { return static_cast<int>((idx % block) / place[a] % 3); };

    FullOperators ops;
    std::vector<Eigen::Triplet<cd>> h;
    for (long i = 0; i < dim; ++i) {
        const long site = i / block;
        const long det = i % block;
        for (long s2 = 0; s2 < n; ++s2)
            if (s2 != site && h_agg(site, s2) != 0.0) h.emplace_back(i, s2 * block + det, h_agg(site, s2));
        double shift = 0.0;
        for (int a = 0; a < m; ++a) {
            const int d = digit(i, a);
            if (d == kU) shift += table.vbar(a, site);
            if (d == kE) h.emplace_back(i, i + place[a], 0.5 * params.omega_c);
            if (d == kU) h.emplace_back(i, i - place[a], 0.5 * params.omega_c);
        }
        if (shift != 0.0) h.emplace_back(i, i, shift);
    }
    ops.h_static.resize(dim, dim);
    ops.h_static.setFromTriplets(h.begin(), h.end());

    const double sqrt_gamma = std::sqrt(params.gamma_p);
    ops.decay_anti.resize(dim, dim);
    for (int a = 0; a < m; ++a) {
        std::vector<Eigen::Triplet<cd>> p;
        std::vector<Eigen::Triplet<cd>> l;
        for (long i = 0; i < dim; ++i) {
            const int d = digit(i, a);
            if (d == kG) p.emplace_back(i, i + place[a], 0.5);
            if (d == kE) {
                p.emplace_back(i, i - place[a], 0.5);
                l.emplace_back(i - place[a], i, sqrt_gamma);
            }
        }
        SpMat pa(dim, dim);
        pa.setFromTriplets(p.begin(), p.end());
        SpMat la(dim, dim);
        la.setFromTriplets(l.begin(), l.end());
        ops.decay_anti += SpMat(la.adjoint()) * la;
        ops.probe_unit.push_back(std::move(pa));
        ops.jump.push_back(std::move(la));
    }
    return ops;
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, int n_sites) {
    const long block = rho.rows() / n_sites;
    Eigen::MatrixXcd red(n_sites, n_sites);
    for (int i = 0; i < n_sites; ++i)
        for (int j = 0; j < n_sites; ++j) red(i, j) = rho.block(i * block, j * block, block, block).trace();
    return red;
}

}  // namespace

RunResult evolve_full(int initial_site, const SystemGeometry& geom, const PhysicalParams& params,
                      const ProbeField& probe, const std::vector<double>& t_grid, double dt,
                      const FullModelOptions& options) {
    const int n = geom.n_sites;
    const int m = static_cast<int>(geom.detector_pos.size());
    const std::size_t dim = full_dimension(n, m);
    if (dim > options.max_dimension)
        throw CapacityExceeded("full model needs dimension " + std::to_string(dim) + " = " +
                               std::to_string(n) + " x 3^" + std::to_string(m) + " above the cap " +
                               std::to_string(options.max_dimension) +
                               "; reduce the number of sites or keep fewer detectors");
    if (!(params.omega_c > 0.0)) throw InvalidParameter("omega_c must be positive");
    if (probe.peak() > 0.5 * params.omega_c * (1.0 + 1e-12))
        throw InvalidParameter("full-model comparison requires Omega_p / Omega_c <= 0.5");
    if (initial_site < 1 || initial_site > n) throw InvalidParameter("initial site outside the chain");
    if (t_grid.empty() || t_grid.front() != 0.0) throw InvalidParameter("t_grid must start at 0");
    if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
    const int target = options.target_site == 0 ? n : options.target_site;
    if (target < 1 || target > n) throw InvalidParameter("target site outside the chain");

    const FullOperators ops = build_full(geom, params);
    const auto d = static_cast<Eigen::Index>(dim);
    const long block = d / n;

    // d rho/dt = -i (K rho - rho K^+) + sum_a L_a rho L_a^+,  K = H - i/2 sum L^+L
    const SpMat k_static = ops.h_static - cd(0.0, 0.5) * ops.decay_anti;
    std::vector<double> amps(m);
    auto rhs = [&](const Eigen::MatrixXcd& rho, double t, Eigen::MatrixXcd& out) {
        for (int a = 0; a < m; ++a) amps[a] = probe.value(a, geom.detector_pos[a], t);
        Eigen::MatrixXcd k_rho = k_static * rho;
        for (int a = 0; a < m; ++a)
            if (amps[a] != 0.0) k_rho += amps[a] * (ops.probe_unit[a] * rho);
        // rho Hermitian along the RK stages, so rho K^+ = (K rho)^+.
        out = cd(0.0, -1.0) * k_rho;
        out += cd(0.0, 1.0) * k_rho.adjoint();
        for (int a = 0; a < m; ++a) {
            const Eigen::MatrixXcd l_rho = ops.jump[a] * rho;
            out += ops.jump[a] * Eigen::MatrixXcd(l_rho.adjoint());
        }
    };

    RunResult result;
    result.target_site = target;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    const long start = static_cast<long>(initial_site - 1) * block;
    rho(start, start) = 1.0;

    auto sample = [&](double t) {
        const Eigen::MatrixXcd red = partial_trace(rho, n);
        if (options.check_invariants) {
            const StateCheck c = check_state(rho);
            auto& dg = result.diagnostics;
            dg.max_trace_error = std::max(dg.max_trace_error, c.trace_error);
            dg.max_hermiticity_error = std::max(dg.max_hermiticity_error, c.hermiticity_error);
            dg.min_eigenvalue = std::min(dg.min_eigenvalue, c.min_eigenvalue);
            if (!(c.trace_error <= options.budget.trace))
                throw IntegrationFailure("full-model trace drifted by " + std::to_string(c.trace_error), t);
            if (!(c.min_eigenvalue >= options.budget.min_eigenvalue))
                throw IntegrationFailure("full-model negative eigenvalue " + std::to_string(c.min_eigenvalue), t);
        }
        result.times.push_back(t);
        result.populations.push_back(red.diagonal().real());
        result.purity.push_back(purity(red));
        if (options.keep_states) result.states.push_back(red);
    };

    Eigen::MatrixXcd k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
    sample(0.0);
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        const double span = t_grid[k] - t_grid[k - 1];
        if (!(span > 0.0)) throw InvalidParameter("t_grid must be strictly increasing");
        const auto substeps = static_cast<long>(std::ceil(span / dt - 1e-9));
        const double h = span / static_cast<double>(substeps);
        for (long s = 0; s < substeps; ++s) {
            const double t = t_grid[k - 1] + static_cast<double>(s) * h;
            rhs(rho, t, k1);
            tmp = rho + (0.5 * h) * k1;
            rhs(tmp, t + 0.5 * h, k2);
            tmp = rho + (0.5 * h) * k2;
            rhs(tmp, t + 0.5 * h, k3);
            tmp = rho + h * k3;
            rhs(tmp, t + h, k4);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            tmp = 0.5 * (rho + rho.adjoint());
            rho = tmp;
            ++result.diagnostics.steps;
        }
        sample(t_grid[k]);
    }
    result.final_rho = partial_trace(rho, n);
    result.final_fidelity = result.populations.back()(target - 1);
    return result;
}

OracleReport compare_models(const PhysicalParams& params, const OracleSetup& setup) {
    if (!(setup.ratio > 0.0)) throw InvalidParameter("oracle ratio must be positive");
    if (setup.samples < 1) throw InvalidParameter("oracle needs at least one sample");

    SystemGeometry geom = nominal_geometry(2, 20.0, 1.0);
    // Keep only the detector next to site 2.
    geom.detector_pos.erase(geom.detector_pos.begin());

    SwitchSchedule schedule;
    schedule.intervals.push_back({0.0, std::numeric_limits<double>::infinity(), {0}, setup.ratio * params.omega_c});
    const ScheduleProbe probe(schedule);

    const double t_end = setup.periods * rabi_period(geom.lattice_r, params.c3);
    std::vector<double> grid(setup.samples + 1);
    for (int k = 0; k <= setup.samples; ++k) grid[k] = t_end * k / setup.samples;

    FullModelOptions full_opts;
    full_opts.keep_states = true;
    const RunResult full = evolve_full(1, geom, params, probe, grid, setup.dt_full, full_opts);

    EvolveOptions eff_opts;
    eff_opts.keep_states = true;
    const RunResult eff = evolve(pure_state(2, 1), build_h_agg(geom, params), build_interactions(geom, params),
                                 geom, probe, params, grid, setup.dt_effective, eff_opts);

    OracleReport report;
    report.ratio = setup.ratio;
    report.times = grid;
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double dist = trace_distance(full.states[k], eff.states[k]);
        report.distance.push_back(dist);
        report.max_distance = std::max(report.max_distance, dist);
        sum += dist;
    }
    report.mean_distance = sum / static_cast<double>(grid.size());
    return report;
}

}  // namespace migsim
