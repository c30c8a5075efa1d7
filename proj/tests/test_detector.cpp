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

#include <cmath>
#include <complex>
#include <random>

#include "catch_amalgamated.hpp"
#include "migsim/aggregate.hpp"
#include "migsim/detector.hpp"
#include "migsim/errors.hpp"

using namespace migsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

InteractionTable single(double v) { return {Eigen::MatrixXd::Constant(1, 1, v)}; }

Eigen::VectorXd amps(double p) { return Eigen::VectorXd::Constant(1, p); }

}  // namespace

TEST_CASE("net interaction table at the nominal geometry", "[detector]") {
    const auto p = PhysicalParams::reference_defaults();
    const auto t = build_interactions(nominal_geometry(5, 20.0, 1.0), p);
    REQUIRE(t.vbar.rows() == 5);
    REQUIRE(t.vbar.cols() == 5);
    // numpy reference values
    CHECK_THAT(t.vbar(0, 0), WithinRel(-6484.247245633795, 1e-12));
    CHECK_THAT(t.vbar(0, 1), WithinRel(-546.6774465414742, 1e-12));
    CHECK_THAT(t.vbar(2, 2), WithinRel(-6484.247254230676, 1e-12));
    CHECK_THAT(t.vbar(1, 3), WithinRel(-546.6396684371667, 1e-12));
}

TEST_CASE("interaction formula selection", "[detector]") {
    const auto p = PhysicalParams::reference_defaults();
    SECTION("lone pair at 1 um gives the p-state coefficient") {
        SystemGeometry g;
        g.n_sites = 1;
        g.aggregate_pos = {Point(0, 0, 0)};
        g.detector_pos = {Point(0, 1, 0)};
        CHECK_THAT(build_interactions(g, p).vbar(0, 0), WithinRel(p.c4_p, 1e-14));
    }
    SECTION("detector near an s atom sees C6/d^6") {
        auto g = nominal_geometry(2, 20.0, 1.0);
        g.detector_pos = {Point(20.0, 0.8, 0.0)};
        auto q = p;
        q.c4_p = 0.0;
        const auto t = build_interactions(g, q);
        CHECK_THAT(t.vbar(0, 0), WithinRel(q.c6_s / std::pow(0.8, 6), 1e-12));
        // Exciton on site 2: only the far s atom at site 1 contributes.
        CHECK_THAT(t.vbar(0, 1), WithinAbs(q.c6_s / std::pow((g.detector_pos[0] - g.aggregate_pos[0]).norm(), 6), 1e-12));
    }
    SECTION("zero coefficients give a zero table") {
        auto q = p;
        q.c4_p = q.c6_s = 0.0;
        CHECK(build_interactions(nominal_geometry(4, 20.0, 1.0), q).vbar.isZero(0.0));
    }
    SECTION("coincident detector is singular") {
        auto g = nominal_geometry(3, 20.0, 1.0);
        g.detector_pos[1] = g.aggregate_pos[2];
        CHECK_THROWS_AS(build_interactions(g, p), SingularGeometry);
    }
}

TEST_CASE("shadow radii bracket the detector offset", "[detector]") {
    const auto p = PhysicalParams::reference_defaults();
    const double rs = shadow_radius(p.c6_s, 6, p);
    const double rp = shadow_radius(p.c4_p, 4, p);
    // numpy reference values
    CHECK_THAT(rs, WithinRel(0.712687285139079, 1e-12));
    CHECK_THAT(rp, WithinRel(1.1165768703014851, 1e-12));
    CHECK(rs < 1.0);
    CHECK(1.0 < rp);
    // Equivalent closed form (2 |C| Gamma / Omega_c^2)^(1/eta).
    CHECK_THAT(rp, WithinRel(std::pow(2.0 * std::abs(p.c4_p) * p.gamma_p / (p.omega_c * p.omega_c), 0.25), 1e-14));
    CHECK_THROWS_AS(shadow_radius(p.c3, 3, p), InvalidParameter);
}

TEST_CASE("effective operators at special points", "[detector]") {
    const auto p = PhysicalParams::reference_defaults();
    const double vc = v_c(p);
    const double op = p.omega_p0;

    SECTION("no probe, no measurement") {
        const auto ops = effective_operators(build_interactions(nominal_geometry(5, 20.0, 1.0), p),
                                             Eigen::VectorXd::Zero(5), p);
        CHECK(ops.h_eff.isZero(0.0));
        CHECK(ops.l_eff.isZero(0.0));
    }
    SECTION("crossover V = V_c") {
        const auto ops = effective_operators(single(vc), amps(op), p);
        CHECK_THAT(ops.h_eff(0), WithinRel(op * op / (p.omega_c * p.omega_c) * vc / 2.0, 1e-13));
        CHECK_THAT(std::abs(ops.l_eff(0, 0)), WithinRel(op / (std::sqrt(2.0) * std::sqrt(p.gamma_p)), 1e-13));
        // -(Omega_p/sqrt(Gamma)) / (i + 1)
        const std::complex<double> expect = -(op / std::sqrt(p.gamma_p)) / std::complex<double>(1.0, 1.0);
        CHECK_THAT(std::abs(ops.l_eff(0, 0) - expect), WithinAbs(0.0, 1e-12));
    }
    SECTION("strong interaction limit") {
        for (double sign : {1.0, -1.0}) {
            const auto ops = effective_operators(single(sign * 1e9 * vc), amps(op), p);
            CHECK_THAT(std::abs(ops.l_eff(0, 0)), WithinRel(op / std::sqrt(p.gamma_p), 1e-9));
            const double scale = op * op / (p.omega_c * p.omega_c) * vc;
            CHECK(std::abs(ops.h_eff(0)) < 1e-8 * scale);
        }
    }
    SECTION("zero interaction gives exactly zero jump operator") {
        const auto ops = effective_operators(single(0.0), amps(op), p);
        CHECK(ops.l_eff(0, 0) == std::complex<double>(0.0));
        CHECK(ops.h_eff(0) == 0.0);
    }
    SECTION("amplitude count must match") {
        CHECK_THROWS_AS(effective_operators(single(1.0), Eigen::VectorXd::Zero(2), p), InvalidParameter);
    }
}

TEST_CASE("operators follow the probe field at each detector", "[detector]") {
    const auto p = PhysicalParams::reference_defaults();
    const auto g = nominal_geometry(3, 20.0, 1.0);
    const auto table = build_interactions(g, p);
    SwitchSchedule s;
    s.intervals.push_back({0.0, 1.0, {1}, p.omega_p0});
    const ScheduleProbe probe(s);
    const auto on = effective_operators(table, probe, g, p, 0.5);
    CHECK(on.l_eff.row(0).isZero(0.0));
    CHECK_FALSE(on.l_eff.row(1).isZero(0.0));
    const auto off = effective_operators(table, probe, g, p, 1.0);
    CHECK(off.l_eff.isZero(0.0));
}

TEST_CASE("jump rate grows with the interaction strength", "[detector]") {
    const auto p = PhysicalParams::reference_defaults();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 20000.0);
    for (int k = 0; k < 500; ++k) {
        double a = u(rng);
        double b = u(rng);
        if (a > b) std::swap(a, b);
        for (double sign : {1.0, -1.0}) {
            const double ra = std::norm(effective_operators(single(sign * a), amps(1.0), p).l_eff(0, 0));
            const double rb = std::norm(effective_operators(single(sign * b), amps(1.0), p).l_eff(0, 0));
            CHECK(ra <= rb);
        }
    }
}

TEST_CASE("strong-measurement regime at an 18 MHz probe", "[detector]") {
    auto p = PhysicalParams::reference_defaults();
    p.omega_p0 = from_config_units(18.0, UnitTag::Per2piMHz);
    const auto t = build_interactions(nominal_geometry(5, 20.0, 1.0), p);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(5);
    a(1) = p.omega_p0;
    const double rate = std::norm(effective_operators(t, a, p).l_eff(1, 1));
    // numpy reference: 236.0356764049951
    CHECK_THAT(rate, WithinRel(236.0356764049951, 1e-10));
    CHECK(rate * rabi_period(20.0, p.c3) > 100.0);
    CHECK_THAT(max_jump_rate(t, p, p.omega_p0), WithinRel(rate, 1e-6));
}
