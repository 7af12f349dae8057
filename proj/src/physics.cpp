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

#include "wavefield/physics.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "wavefield/errors.hpp"

namespace wavefield {

Eigen::VectorXd pde_residual(const DifferentiableField& field, const Medium& medium,
                             std::span<const SpaceTime> points) {
  medium.validate();
  for (const auto& p : points) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || !std::isfinite(p[2])) {
      throw ArgumentError("pde_residual: non-finite collocation point");
    }
  }
  const auto jets = field.query_batch(points);
  const double inv_c2 = 1.0 / (medium.c * medium.c);
  Eigen::VectorXd r(static_cast<Eigen::Index>(jets.size()));
  for (std::size_t i = 0; i < jets.size(); ++i) {
    const auto& j = jets[i];
    const double v = j.hdiag[ad::kX] + j.hdiag[ad::kY] - inv_c2 * j.hdiag[ad::kT];
    if (!std::isfinite(v)) throw NumericError("pde_residual: non-finite field derivatives");
    r(static_cast<Eigen::Index>(i)) = v;
  }
  return r;
}

double loss_data(const DifferentiableField& field, const DataBatch& batch) {
  if (batch.points.empty()) throw ArgumentError("loss_data: empty batch");
  if (static_cast<Eigen::Index>(batch.points.size()) != batch.targets.size()) {
    throw ShapeError("loss_data: points and targets differ in length");
  }
  return (field.evaluate(batch.points) - batch.targets).cwiseAbs().mean();
}

double loss_pde(const DifferentiableField& field, const Medium& medium,
                const CollocationBatch& batch) {
  if (batch.points.empty()) throw ArgumentError("loss_pde: empty batch");
  return pde_residual(field, medium, batch.points).cwiseAbs().mean();
}

double total_loss(double l_data, double l_pde, const AdaptiveWeights& weights) {
  return l_data * weights.data_weight() + l_pde * weights.pde_weight() + weights.s_data +
         weights.s_pde;
}

AdaptiveWeights total_loss_gradient(double l_data, double l_pde, const AdaptiveWeights& weights) {
  return {1.0 - l_data * std::exp(-2.0 * weights.s_data),
          1.0 - l_pde * std::exp(-2.0 * weights.s_pde)};
}

CollocationBatch sample_lhs(const Box3& bounds, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("sample_lhs: n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  CollocationBatch batch;
  batch.points.resize(n);
  std::vector<std::size_t> strata(n);
  for (int axis = 0; axis < 3; ++axis) {
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    std::shuffle(strata.begin(), strata.end(), rng);
    const double width = (bounds.hi[axis] - bounds.lo[axis]) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      batch.points[i][axis] =
          bounds.lo[axis] + (static_cast<double>(strata[i]) + jitter(rng)) * width;
    }
  }
  return batch;
}

DataBatch sample_data(const FieldGrid& grid, std::size_t n, std::uint64_t seed) {
  if (grid.empty()) throw ArgumentError("sample_data: grid is empty");
  const auto samples = static_cast<std::uint64_t>(grid.samples());
  const auto total = samples * grid.position_count();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
  DataBatch batch;
  batch.points.resize(n);
  batch.targets.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t k = pick(rng);
    const auto m = static_cast<Eigen::Index>(k / samples);
    const auto s = static_cast<Eigen::Index>(k % samples);
    const Vec3& r = grid.positions[static_cast<std::size_t>(m)];
    batch.points[i] = {r[0], r[1], grid.time(s)};
    batch.targets(static_cast<Eigen::Index>(i)) = grid.pressure(s, m);
  }
  return batch;
}

}  // namespace wavefield
