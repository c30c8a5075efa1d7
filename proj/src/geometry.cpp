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

#include "migsim/geometry.hpp"

#include <random>
#include <sstream>

#include "migsim/errors.hpp"

namespace migsim {

bool SystemGeometry::degenerate() const {
    for (const auto& d : detector_pos)
        for (const auto& a : aggregate_pos)
            if ((d - a).norm() == 0.0) return true;
    return false;
}

std::string DisorderSpec::dims_string() const {
    static constexpr char names[3] = {'x', 'y', 'z'};
    std::string out;
    for (int k = 0; k < 3; ++k) {
        if (!dims[k]) continue;
        if (!out.empty()) out += ',';
        out += names[k];
    }
    return out;
}

std::array<bool, 3> DisorderSpec::parse_dims(const std::string& text) {
    std::array<bool, 3> dims{false, false, false};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        item = item.substr(b, e - b + 1);
        if (item == "x") dims[0] = true;
        else if (item == "y") dims[1] = true;
        else if (item == "z") dims[2] = true;
        else throw ParseError("unknown disorder axis '" + item + "'");
    }
    return dims;
}

SystemGeometry nominal_geometry(int n_sites, double lattice_r, double detector_offset_y) {
    if (n_sites < 2) throw InvalidGeometry("a chain needs at least two sites");
    if (!(lattice_r > 0.0)) throw InvalidGeometry("lattice spacing must be positive");

    SystemGeometry g;
    g.n_sites = n_sites;
    g.lattice_r = lattice_r;
    g.detector_offset_y = detector_offset_y;
    g.aggregate_pos.reserve(n_sites);
    g.detector_pos.reserve(n_sites);
    for (int n = 0; n < n_sites; ++n) {
        g.aggregate_pos.emplace_back(n * lattice_r, 0.0, 0.0);
        g.detector_pos.emplace_back(n * lattice_r, detector_offset_y, 0.0);
    }
    return g;
}

double keyed_normal(std::uint64_t seed, std::uint64_t index, int kind, int atom, int axis) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      static_cast<std::uint32_t>(kind), static_cast<std::uint32_t>(atom),
                      static_cast<std::uint32_t>(axis)};
    std::mt19937_64 engine(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    return normal(engine);
}

SystemGeometry sample_realization(const SystemGeometry& geom, const DisorderSpec& spec,
                                  std::uint64_t index) {
    SystemGeometry out = geom;
    if (spec.sigma_trap == 0.0) return out;

    auto displace = [&](std::vector<Point>& atoms, int kind) {
        for (int i = 0; i < static_cast<int>(atoms.size()); ++i)
            for (int axis = 0; axis < 3; ++axis)
                if (spec.dims[axis])
                    atoms[i][axis] += spec.sigma_trap * keyed_normal(spec.seed, index, kind, i, axis);
    };
    displace(out.aggregate_pos, 0);
    displace(out.detector_pos, 1);
    return out;
}

}  // namespace migsim
