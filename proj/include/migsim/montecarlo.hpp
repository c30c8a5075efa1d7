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
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "migsim/dynamics.hpp"
#include "migsim/geometry.hpp"

namespace migsim {

struct RealizationFailure {
    std::uint64_t index = 0;
    std::string message;
};

struct EnsembleResult {
    std::vector<std::uint64_t> indices;   ///< successful realizations, ascending
    std::vector<double> fidelities;       ///< final target population per index
    std::vector<double> times;
    std::vector<Eigen::VectorXd> mean_populations;
    std::vector<double> mean_purity;
    double mean_fidelity = 0.0;
    double stderr_fidelity = 0.0;         ///< sample std / sqrt(count)
    std::size_t count = 0;                ///< successful realizations
    std::vector<RealizationFailure> failures;
    std::uint64_t master_seed = 0;
    int target_site = 0;
};

/// Running sums over realizations. add() and merge() commute up to
/// floating-point rounding; run_ensemble always reduces in index order so
/// results are bit-reproducible.
class EnsembleAccumulator {
public:
    void add(std::uint64_t index, const RunResult& run);
    void add_failure(std::uint64_t index, std::string message);
    void merge(const EnsembleAccumulator& other);

    std::size_t count() const { return count_; }
    std::size_t failure_count() const { return failures_.size(); }

    /// Throws InvalidParameter when nothing succeeded.
    EnsembleResult result(std::uint64_t master_seed = 0) const;

private:
    std::size_t count_ = 0;
    int target_site_ = 0;
    std::vector<double> times_;
    std::vector<Eigen::VectorXd> pop_sum_;
    std::vector<double> purity_sum_;
    double fid_sum_ = 0.0;
    double fid_sq_sum_ = 0.0;
    std::vector<std::pair<std::uint64_t, double>> fidelities_;
    std::vector<RealizationFailure> failures_;
};

/// Runs one realization of a scenario on the given geometry.
using RealizationRunner = std::function<RunResult(const SystemGeometry&)>;

struct EnsembleOptions {
    unsigned threads = 1;  ///< 0 picks the hardware concurrency
    /// Called once per successful realization, in index order.
    std::function<void(std::uint64_t, const RunResult&)> on_realization;
    /// Largest tolerated share of failed realizations.
    double max_failure_fraction = 0.01;
};

/// Realization i runs on sample_realization(nominal, disorder, i) for
/// i = 0 .. count-1. IntegrationFailure and SingularGeometry inside a run are
/// recorded and the realization is left out of the averages; more than
/// max_failure_fraction failures throws EnsembleFailure.
EnsembleResult run_ensemble(const SystemGeometry& nominal, const RealizationRunner& runner,
                            const DisorderSpec& disorder, std::size_t count,
                            const EnsembleOptions& options = {});

}  // namespace migsim
