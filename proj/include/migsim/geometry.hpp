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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace migsim {

using Point = Eigen::Vector3d;

/// Chain of aggregate atoms along x, each flanked by one detector atom
/// offset along y. Positions in um; index 0 is site 1.
struct SystemGeometry {
    int n_sites = 0;
    double lattice_r = 0.0;
    double detector_offset_y = 0.0;
    std::vector<Point> aggregate_pos;
    std::vector<Point> detector_pos;

    /// True when some detector coincides with an aggregate atom.
    bool degenerate() const;
};

enum class Axis : int { X = 0, Y = 1, Z = 2 };

struct DisorderSpec {
    double sigma_trap = 0.0;                      ///< per-coordinate standard deviation, um
    std::array<bool, 3> dims{true, true, false};  ///< perturbed coordinates
    std::uint64_t seed = 0;

    /// "x,y" style rendering of the selected axes.
    std::string dims_string() const;
    /// Inverse of dims_string; throws ParseError on unknown axes.
    static std::array<bool, 3> parse_dims(const std::string& text);
};

SystemGeometry nominal_geometry(int n_sites, double lattice_r, double detector_offset_y);

/// One disorder realization. Every displacement is a pure function of
/// (seed, index, atom kind, atom id, axis), so realizations can be drawn in
/// any order or concurrently and always come out identical.
SystemGeometry sample_realization(const SystemGeometry& geom, const DisorderSpec& spec,
                                  std::uint64_t index);

/// Standard normal draw keyed by the tuple above; exposed for tests.
double keyed_normal(std::uint64_t seed, std::uint64_t index, int kind, int atom, int axis);

}  // namespace migsim
