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

#include <Eigen/Core>

#include "migsim/geometry.hpp"
#include "migsim/params.hpp"

namespace migsim {

/// Single-excitation hopping Hamiltonian C3/|r_n - r_m|^3 over all pairs,
/// in the basis where site n carries the p excitation. Zero diagonal.
Eigen::MatrixXd build_h_agg(const SystemGeometry& geom, const PhysicalParams& params);

/// Nearest-neighbour transfer time pi R^3 / (2 |C3|).
double rabi_period(double lattice_r, double c3);

}  // namespace migsim
