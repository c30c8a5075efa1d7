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
#include "migsim/montecarlo.hpp"

using namespace migsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Cheap stand-in scenario: final "fidelity" and trajectories depend on the
// realized position of aggregate atom 2.
RunResult fake_run(const SystemGeometry& g) {
    RunResult r;
    r.target_site = 2;
    const double x = g.aggregate_pos[1].x() - 20.0;
    for (int k = 0; k < 3; ++k) {
        r.times.push_back(0.1 * k);
        Eigen::VectorXd pop(2);
        const double f = 0.5 + 0.1 * std::tanh(x) * k / 2.0;
        pop << 1.0 - f, f;
        r.populations.push_back(pop);
        r.purity.push_back(1.0 - 0.05 * k);
    }
    r.final_fidelity = r.populations.back()(1);
    return r;
}

DisorderSpec spec(double sigma, std::uint64_t seed = 9) {
    DisorderSpec d;
    d.sigma_trap = sigma;
    d.seed = seed;
    return d;
}

}  // namespace

TEST_CASE("order-independent aggregation", "[montecarlo]") {
    const auto g = nominal_geometry(2, 20.0, 1.0);
    const auto d = spec(0.5);
    EnsembleAccumulator all, first, second;
    for (std::uint64_t i = 0; i < 40; ++i) {
        const RunResult r = fake_run(sample_realization(g, d, i));
        all.add(i, r);
        (i < 20 ? first : second).add(i, r);
    }
    EnsembleAccumulator merged = second;
    merged.merge(first);
    const auto a = all.result();
    const auto m = merged.result();
    CHECK(a.count == m.count);
    CHECK_THAT(m.mean_fidelity, WithinAbs(a.mean_fidelity, 1e-12));
    CHECK_THAT(m.stderr_fidelity, WithinAbs(a.stderr_fidelity, 1e-12));
    for (std::size_t k = 0; k < a.times.size(); ++k) {
        CHECK((m.mean_populations[k] - a.mean_populations[k]).cwiseAbs().maxCoeff() < 1e-12);
        CHECK_THAT(m.mean_purity[k], WithinAbs(a.mean_purity[k], 1e-12));
    }
    CHECK(m.indices == a.indices);
    CHECK(m.fidelities == a.fidelities);
}

TEST_CASE("ensemble statistics", "[montecarlo]") {
    const auto g = nominal_geometry(2, 20.0, 1.0);
    const auto e = run_ensemble(g, fake_run, spec(0.5), 200);
    REQUIRE(e.count == 200);
    double mean = 0.0;
    for (double f : e.fidelities) mean += f;
    mean /= 200.0;
    double var = 0.0;
    for (double f : e.fidelities) var += (f - mean) * (f - mean);
    var /= 199.0;
    CHECK_THAT(e.mean_fidelity, WithinRel(mean, 1e-13));
    CHECK_THAT(e.stderr_fidelity, WithinRel(std::sqrt(var / 200.0), 1e-10));
    CHECK(e.mean_fidelity >= 0.0);
    CHECK(e.mean_fidelity <= 1.0);
    CHECK(e.master_seed == 9);
    // Summary and time series agree exactly.
    CHECK(e.mean_populations.back()(1) == e.mean_fidelity);
}

TEST_CASE("standard error shrinks as one over root count", "[montecarlo]") {
    const auto g = nominal_geometry(2, 20.0, 1.0);
    const double s50 = run_ensemble(g, fake_run, spec(0.5), 50).stderr_fidelity;
    const double s200 = run_ensemble(g, fake_run, spec(0.5), 200).stderr_fidelity;
    const double s800 = run_ensemble(g, fake_run, spec(0.5), 800).stderr_fidelity;
    CHECK_THAT(s50 / s200, WithinAbs(2.0, 0.5));
    CHECK_THAT(s200 / s800, WithinAbs(2.0, 0.5));
}

TEST_CASE("determinism and thread independence", "[montecarlo]") {
    const auto g = nominal_geometry(2, 20.0, 1.0);
    const auto a = run_ensemble(g, fake_run, spec(0.5, 77), 64);
    const auto b = run_ensemble(g, fake_run, spec(0.5, 77), 64);
    EnsembleOptions threaded;
    threaded.threads = 3;
    const auto c = run_ensemble(g, fake_run, spec(0.5, 77), 64, threaded);
    CHECK(a.fidelities == b.fidelities);
    CHECK(a.mean_fidelity == b.mean_fidelity);
    CHECK(a.fidelities == c.fidelities);
    CHECK(a.mean_fidelity == c.mean_fidelity);
    CHECK(a.mean_purity == c.mean_purity);
    const auto other = run_ensemble(g, fake_run, spec(0.5, 78), 64);
    CHECK(other.mean_fidelity != a.mean_fidelity);
}

TEST_CASE("zero disorder reproduces the nominal run", "[montecarlo]") {
    const auto g = nominal_geometry(2, 20.0, 1.0);
    const auto e = run_ensemble(g, fake_run, spec(0.0), 5);
    const RunResult nominal = fake_run(g);
    for (double f : e.fidelities) CHECK(f == nominal.final_fidelity);
    CHECK(e.stderr_fidelity == 0.0);
}

TEST_CASE("failed realizations", "[montecarlo]") {
    const auto g = nominal_geometry(2, 20.0, 1.0);
    int calls = 0;
    auto flaky = [&](const SystemGeometry& geom) {
        if (calls++ == 3) throw IntegrationFailure("forced", 0.25);
        return fake_run(geom);
    };
    const auto e = run_ensemble(g, flaky, spec(0.5), 200);
    CHECK(e.count == 199);
    REQUIRE(e.failures.size() == 1);
    CHECK(e.failures[0].index == 3);
    CHECK(e.failures[0].message.find("forced") != std::string::npos);

    calls = 0;
    auto broken = [&](const SystemGeometry& geom) {
        if (calls++ % 10 == 0) throw IntegrationFailure("forced", 0.25);
        return fake_run(geom);
    };
    CHECK_THROWS_AS(run_ensemble(g, broken, spec(0.5), 100), EnsembleFailure);
    CHECK_THROWS_AS(run_ensemble(g, fake_run, spec(0.5), 0), InvalidParameter);
}

TEST_CASE("per-realization callback runs in index order", "[montecarlo]") {
    const auto g = nominal_geometry(2, 20.0, 1.0);
    std::vector<std::uint64_t> seen;
    EnsembleOptions opts;
    opts.threads = 2;
    opts.on_realization = [&](std::uint64_t i, const RunResult&) { seen.push_back(i); };
    run_ensemble(g, fake_run, spec(0.5), 6, opts);
    CHECK(seen == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5});
}
