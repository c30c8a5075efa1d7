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

#include "migsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <thread>

#include "migsim/errors.hpp"

namespace migsim {

void EnsembleAccumulator::add(std::uint64_t index, const RunResult& run) {
    if (count_ == 0) {
        times_ = run.times;
        target_site_ = run.target_site;
        pop_sum_.assign(run.populations.size(), Eigen::VectorXd::Zero(run.populations.front().size()));
        purity_sum_.assign(run.purity.size(), 0.0);
    } else if (run.times.size() != times_.size() || run.target_site != target_site_) {
        throw InvalidParameter("realizations disagree on their time grid or target site");
    }
    for (std::size_t k = 0; k < pop_sum_.size(); ++k) {
        pop_sum_[k] += run.populations[k];
        purity_sum_[k] += run.purity[k];
    }
    fid_sum_ += run.final_fidelity;
    fid_sq_sum_ += run.final_fidelity * run.final_fidelity;
    fidelities_.emplace_back(index, run.final_fidelity);
    ++count_;
}

void EnsembleAccumulator::add_failure(std::uint64_t index, std::string message) {
    failures_.push_back({index, std::move(message)});
}

void EnsembleAccumulator::merge(const EnsembleAccumulator& other) {
    if (other.count_ > 0) {
        if (count_ == 0) {
            times_ = other.times_;
            target_site_ = other.target_site_;
            pop_sum_ = other.pop_sum_;
            purity_sum_ = other.purity_sum_;
        } else {
            if (other.times_.size() != times_.size() || other.target_site_ != target_site_)
                throw InvalidParameter("cannot merge ensembles on different grids");
            for (std::size_t k = 0; k < pop_sum_.size(); ++k) {
                pop_sum_[k] += other.pop_sum_[k];
                purity_sum_[k] += other.purity_sum_[k];
            }
        }
        fid_sum_ += other.fid_sum_;
        fid_sq_sum_ += other.fid_sq_sum_;
        count_ += other.count_;
        fidelities_.insert(fidelities_.end(), other.fidelities_.begin(), other.fidelities_.end());
    }
    failures_.insert(failures_.end(), other.failures_.begin(), other.failures_.end());
}

EnsembleResult EnsembleAccumulator::result(std::uint64_t master_seed) const {
    if (count_ == 0) throw InvalidParameter("ensemble has no successful realization");
    const double n = static_cast<double>(count_);
    EnsembleResult r;
    r.master_seed = master_seed;
    r.count = count_;
    r.target_site = target_site_;
    r.times = times_;
    r.mean_populations.reserve(pop_sum_.size());
    for (const auto& p : pop_sum_) r.mean_populations.push_back(p / n);
    for (double p : purity_sum_) r.mean_purity.push_back(p / n);
    r.mean_fidelity = fid_sum_ / n;
    if (count_ > 1) {
        const double var = std::max(0.0, (fid_sq_sum_ - n * r.mean_fidelity * r.mean_fidelity) / (n - 1.0));
        r.stderr_fidelity = std::sqrt(var / n);
    }
    auto fids = fidelities_;
    std::sort(fids.begin(), fids.end());
    for (const auto& [idx, f] : fids) {
        r.indices.push_back(idx);
        r.fidelities.push_back(f);
    }
    r.failures = failures_;
    std::sort(r.failures.begin(), r.failures.end(),
              [](const auto& a, const auto& b) { return a.index < b.index; });
    return r;
}

EnsembleResult run_ensemble(const SystemGeometry& nominal, const RealizationRunner& runner,
                            const DisorderSpec& disorder, std::size_t count,
                            const EnsembleOptions& options) {
    if (count < 1) throw InvalidParameter("ensemble needs at least one realization");

    // Runs fill slots by index; the reduction below walks them in order, so
    // the thread count never changes the result.
    std::vector<std::optional<RunResult>> runs(count);
    std::vector<std::string> errors(count);
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < count; i += stride) {
            try {
                runs[i] = runner(sample_realization(nominal, disorder, i));
            } catch (const IntegrationFailure& e) {
                errors[i] = e.what();
            } catch (const SingularGeometry& e) {
                errors[i] = e.what();
            }
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                            : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    }

    EnsembleAccumulator acc;
    for (std::size_t i = 0; i < count; ++i) {
        if (runs[i]) {
            acc.add(i, *runs[i]);
            if (options.on_realization) options.on_realization(i, *runs[i]);
        } else {
            acc.add_failure(i, errors[i]);
        }
    }
    const double fraction = static_cast<double>(acc.failure_count()) / static_cast<double>(count);
    if (fraction > options.max_failure_fraction || acc.count() == 0) {
        std::string msg = std::to_string(acc.failure_count()) + " of " + std::to_string(count) +
                          " realizations failed";
        const auto first = std::find_if(errors.begin(), errors.end(), [](const auto& e) { return !e.empty(); });
        if (first != errors.end()) msg += "; first: " + *first;
        throw EnsembleFailure(msg);
    }
    return acc.result(disorder.seed);
}

}  // namespace migsim
