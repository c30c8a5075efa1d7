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

#include "migsim/aggregate.hpp"

#include <cmath>
#include <numbers>

#include "migsim/errors.hpp"

namespace migsim {

Eigen::MatrixXd build_h_agg(const SystemGeometry& geom, const PhysicalParams& params) {
    const auto n = static_cast<Eigen::Index>(geom.aggregate_pos.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double r = (geom.aggregate_pos[i] - geom.aggregate_pos[j]).norm();
            if (r == 0.0)
                throw SingularGeometry("aggregate atoms " + std::to_string(i + 1) + " and " +
                                       std::to_string(j + 1) + " coincide");
            h(i, j) = h(j, i) = params.c3 / (r * r * r);
        }
    }
    return h;
}

double rabi_period(double lattice_r, double c3) {
    if (c3 == 0.0) throw InvalidParameter("rabi_period requires a non-zero C3");
    return std::numbers::pi * lattice_r * lattice_r * lattice_r / (2.0 * std::abs(c3));
}

}  // namespace migsim
