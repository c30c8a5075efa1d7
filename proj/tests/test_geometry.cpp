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
#include "migsim/errors.hpp"
#include "migsim/geometry.hpp"

using namespace migsim;
using Catch::Matchers::WithinAbs;

TEST_CASE("nominal chain layout", "[geometry]") {
    const auto g = nominal_geometry(5, 20.0, 1.0);
    REQUIRE(g.aggregate_pos.size() == 5);
    REQUIRE(g.detector_pos.size() == 5);
    for (int n = 0; n < 5; ++n) {
        CHECK(g.aggregate_pos[n] == Point(20.0 * n, 0.0, 0.0));
        CHECK(g.detector_pos[n] == Point(20.0 * n, 1.0, 0.0));
    }
    CHECK_FALSE(g.degenerate());
    CHECK(nominal_geometry(3, 20.0, 0.0).degenerate());

    CHECK_THROWS_AS(nominal_geometry(1, 20.0, 1.0), InvalidGeometry);
    CHECK_THROWS_AS(nominal_geometry(5, 0.0, 1.0), InvalidGeometry);
    CHECK_THROWS_AS(nominal_geometry(5, -3.0, 1.0), InvalidGeometry);
}

TEST_CASE("disorder axes round-trip", "[geometry]") {
    DisorderSpec d;
    CHECK(d.dims_string() == "x,y");
    CHECK(DisorderSpec::parse_dims("x, y") == std::array<bool, 3>{true, true, false});
    CHECK(DisorderSpec::parse_dims("z") == std::array<bool, 3>{false, false, true});
    CHECK(DisorderSpec::parse_dims("") == std::array<bool, 3>{false, false, false});
    CHECK_THROWS_AS(DisorderSpec::parse_dims("x,w"), ParseError);
}

TEST_CASE("realizations are keyed, reproducible and axis-selective", "[geometry]") {
    const auto g = nominal_geometry(5, 20.0, 1.0);
    DisorderSpec spec;
    spec.sigma_trap = 0.5;
    spec.seed = 42;

    SECTION("zero width leaves the geometry untouched") {
        DisorderSpec none = spec;
        none.sigma_trap = 0.0;
        const auto r = sample_realization(g, none, 3);
        CHECK(r.aggregate_pos == g.aggregate_pos);
        CHECK(r.detector_pos == g.detector_pos);
    }
    SECTION("same key, same draw; different key, different draw") {
        const auto a = sample_realization(g, spec, 7);
        const auto b = sample_realization(g, spec, 7);
        CHECK(a.aggregate_pos == b.aggregate_pos);
        CHECK(a.detector_pos == b.detector_pos);
        const auto c = sample_realization(g, spec, 8);
        CHECK(a.aggregate_pos != c.aggregate_pos);
        DisorderSpec other = spec;
        other.seed = 43;
        CHECK(sample_realization(g, other, 7).aggregate_pos != a.aggregate_pos);
    }
    SECTION("unselected axes stay fixed") {
        const auto r = sample_realization(g, spec, 0);
        for (int n = 0; n < 5; ++n) {
            CHECK(r.aggregate_pos[n].z() == 0.0);
            CHECK(r.detector_pos[n].z() == 0.0);
        }
        DisorderSpec only_x = spec;
        only_x.dims = {true, false, false};
        const auto rx = sample_realization(g, only_x, 0);
        for (int n = 0; n < 5; ++n) CHECK(rx.detector_pos[n].y() == 1.0);
    }
    SECTION("displacements have the requested spread") {
        double sum = 0.0;
        double sum2 = 0.0;
        int count = 0;
        for (std::uint64_t i = 0; i < 2000; ++i) {
            const auto r = sample_realization(g, spec, i);
            for (int n = 0; n < 5; ++n) {
                const double dx = r.aggregate_pos[n].x() - g.aggregate_pos[n].x();
                sum += dx;
                sum2 += dx * dx;
                ++count;
            }
        }
        const double mean = sum / count;
        const double sd = std::sqrt(sum2 / count - mean * mean);
        CHECK_THAT(mean, WithinAbs(0.0, 0.02));
        CHECK_THAT(sd, WithinAbs(0.5, 0.02));
    }
}
