// Copyright 2026 The wavefield Authors.
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
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wavefield/field.hpp"

namespace wavefield {

using Vec3 = std::array<double, 3>;

// Pressure sampled at a set of receiver positions on a uniform time grid.
struct FieldGrid {
  std::vector<Vec3> positions;  // (x, y, z) in meters
  double fs = 0.0;              // Hz
  double t0 = 0.0;              // s, time of sample 0
  Eigen::MatrixXd pressure;     // samples x positions (Pa)

  Eigen::Index samples() const { return pressure.rows(); }
  std::size_t position_count() const { return positions.size(); }
  double time(Eigen::Index n) const { return t0 + static_cast<double>(n) / fs; }
  double duration() const { return static_cast<double>(samples()) / fs; }
  bool empty() const { return positions.empty() || samples() == 0; }

  // Throws ArgumentError when fs <= 0, dimensions disagree, pressure is not
  // finite or positions repeat.
  void validate() const;

  FieldGrid subset(std::span<const std::size_t> indices) const;
  // Index of the position equal to `p` (within 1e-9 m), if any.
  std::ptrdiff_t find_position(const Vec3& p, double tol = 1e-9) const;
};

// What to sample: receiver positions and a uniform time axis.
struct GridRequest {
  std::vector<Vec3> positions;
  double fs = 8000.0;
  double t0 = 0.0;
  Eigen::Index samples = 0;
};

// Evaluates a field on the requested grid (z is ignored by 2D fields).
FieldGrid sample_field(const DifferentiableField& field, const GridRequest& request);

// nx x ny receivers spanning [x0, x0 + (nx-1)*dx] x [y0, y0 + (ny-1)*dy] at
// height z, ordered with x varying fastest.
std::vector<Vec3> rectangular_positions(int nx, int ny, double x0, double y0, double dx, double dy,
                                        double z = 0.0);

// Indices of a regular sub-lattice of an nx x ny rectangular layout: every
// `stride`-th receiver along both axes, starting at `offset`.
std::vector<std::size_t> strided_subset(int nx, int ny, int stride, int offset = 0);

// Distance in the (x, y) plane.
double planar_distance(const Vec3& a, const Vec3& b);

}  // namespace wavefield
