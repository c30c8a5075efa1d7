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

#include "catch_amalgamated.hpp"
#include "migsim/aggregate.hpp"
#include "migsim/errors.hpp"

using namespace migsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("hopping Hamiltonian over all pairs", "[aggregate]") {
    const auto p = PhysicalParams::reference_defaults();
    const auto g = nominal_geometry(5, 20.0, 1.0);
    const Eigen::MatrixXd h = build_h_agg(g, p);
    REQUIRE(h.rows() == 5);
    CHECK(h.diagonal().isZero(0.0));
    CHECK((h - h.transpose()).isZero(0.0));
    const double j = p.c3 / 8000.0;
    CHECK_THAT(h(0, 1), WithinRel(j, 1e-14));
    CHECK_THAT(h(0, 2), WithinRel(j / 8.0, 1e-14));
    CHECK_THAT(h(1, 4), WithinRel(j / 27.0, 1e-14));
    CHECK_THAT(h(0, 4), WithinRel(j / 64.0, 1e-14));
}

TEST_CASE("coincident aggregate atoms are rejected", "[aggregate]") {
    auto g = nominal_geometry(3, 20.0, 1.0);
    g.aggregate_pos[2] = g.aggregate_pos[1];
    CHECK_THROWS_AS(build_h_agg(g, PhysicalParams::reference_defaults()), SingularGeometry);
}

TEST_CASE("transfer period", "[aggregate]") {
    const auto p = PhysicalParams::reference_defaults();
    // numpy reference: 1.2353304508956144
    CHECK_THAT(rabi_period(20.0, p.c3), WithinRel(1.2353304508956144, 1e-14));
    CHECK_THAT(rabi_period(20.0, -p.c3), WithinRel(1.2353304508956144, 1e-14));
    CHECK_THROWS_AS(rabi_period(20.0, 0.0), InvalidParameter);

    // Two sites swap exactly after one period: J t = pi/2.
    const double j = p.c3 / 8000.0;
    CHECK_THAT(j * rabi_period(20.0, p.c3), WithinRel(M_PI / 2.0, 1e-14));
}
