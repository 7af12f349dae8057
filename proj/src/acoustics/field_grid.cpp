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

#include "wavefield/acoustics/field_grid.hpp"

#include <cmath>
#include <string>

#include "wavefield/errors.hpp"

namespace wavefield {

void FieldGrid::validate() const {
  if (!(fs > 0.0) || !std::isfinite(fs)) throw ArgumentError("grid sample rate must be positive");
  if (!std::isfinite(t0)) throw ArgumentError("grid start time must be finite");
  if (pressure.cols() != static_cast<Eigen::Index>(positions.size())) {
    throw ArgumentError("grid has " + std::to_string(positions.size()) + " positions but " +
                        std::to_string(pressure.cols()) + " pressure columns");
  }
  if (!pressure.allFinite()) throw ArgumentError("grid pressure contains non-finite values");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (double v : positions[i]) {
      if (!std::isfinite(v)) throw ArgumentError("grid position is not finite");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (positions[i] == positions[j]) {
        throw ArgumentError("grid positions " + std::to_string(j) + " and " + std::to_string(i) +
                            " coincide");
      }
    }
  }
}

FieldGrid FieldGrid::subset(std::span<const std::size_t> indices) const {
  FieldGrid out;
  out.fs = fs;
  out.t0 = t0;
  out.pressure.resize(samples(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= positions.size()) throw ArgumentError("subset index out of range");
    out.positions.push_back(positions[indices[k]]);
    out.pressure.col(static_cast<Eigen::Index>(k)) = pressure.col(static_cast<Eigen::Index>(indices[k]));
  }
  return out;
}

std::ptrdiff_t FieldGrid::find_position(const Vec3& p, double tol) const {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto& q = positions[i];
    if (std::abs(q[0] - p[0]) <= tol && std::abs(q[1] - p[1]) <= tol && std::abs(q[2] - p[2]) <= tol) {
      return static_cast<std::ptrdiff_t>(i);
    }
  }
  return -1;
}

FieldGrid sample_field(const DifferentiableField& field, const GridRequest& request) {
  if (!(request.fs > 0.0)) throw ArgumentError("sample rate must be positive");
  if (request.samples < 1) throw ArgumentError("grid request needs at least one sample");
  FieldGrid grid;
  grid.positions = request.positions;
  grid.fs = request.fs;
  grid.t0 = request.t0;
  const Eigen::Index n = request.samples;
  const auto m = static_cast<Eigen::Index>(request.positions.size());
  grid.pressure.resize(n, m);
  std::vector<SpaceTime> points(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < m; ++j) {
    const Vec3& r = request.positions[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < n; ++i) {
      points[static_cast<std::size_t>(i)] = {r[0], r[1], grid.time(i)};
    }
    grid.pressure.col(j) = field.evaluate(points);
  }
  return grid;
}

std::vector<Vec3> rectangular_positions(int nx, int ny, double x0, double y0, double dx, double dy,
                                        double z) {
  if (nx < 1 || ny < 1) throw ArgumentError("rectangular layout needs nx, ny >= 1");
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) out.push_back({x0 + i * dx, y0 + j * dy, z});
  }
  return out;
}

std::vector<std::size_t> strided_subset(int nx, int ny, int stride, int offset) {
  if (stride < 1) throw ArgumentError("stride must be >= 1");
  if (offset < 0 || offset >= stride) throw ArgumentError("offset must lie in [0, stride)");
  std::vector<std::size_t> out;
  for (int j = offset; j < ny; j += stride) {
    for (int i = offset; i < nx; i += stride) {
      out.push_back(static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                    static_cast<std::size_t>(i));
    }
  }
  return out;
}

double planar_distance(const Vec3& a, const Vec3& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace wavefield
