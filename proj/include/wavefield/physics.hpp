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

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wavefield/acoustics/field_grid.hpp"
#include "wavefield/field.hpp"
#include "wavefield/medium.hpp"

namespace wavefield {

// Learnable loss scales stored as logs, s = log(eps), so that eps stays
// positive under unconstrained updates.
struct AdaptiveWeights {
  double s_data = 0.0;
  double s_pde = std::log(10.0);

  static AdaptiveWeights from_scales(double eps_data, double eps_pde) {
    return {std::log(eps_data), std::log(eps_pde)};
  }
  double eps_data() const { return std::exp(s_data); }
  double eps_pde() const { return std::exp(s_pde); }
  // Effective multipliers 1 / (2 eps^2) of each loss term.
  double data_weight() const { return 0.5 * std::exp(-2.0 * s_data); }
  double pde_weight() const { return 0.5 * std::exp(-2.0 * s_pde); }
};

struct CollocationBatch {
  std::vector<SpaceTime> points;
};

struct DataBatch {
  std::vector<SpaceTime> points;
  Eigen::VectorXd targets;  // Pa
};

// Homogeneous 2D wave-equation residual
//   d2p/dx2 + d2p/dy2 - (1/c^2) d2p/dt2   [Pa/m^2]
Eigen::VectorXd pde_residual(const DifferentiableField& field, const Medium& medium,
                             std::span<const SpaceTime> points);

// Mean absolute misfit against the batch targets.
double loss_data(const DifferentiableField& field, const DataBatch& batch);

// Mean absolute wave-equation residual over the collocation points.
double loss_pde(const DifferentiableField& field, const Medium& medium,
                const CollocationBatch& batch);

// l_data / (2 eps_d^2) + l_pde / (2 eps_f^2) + log(eps_d eps_f)
double total_loss(double l_data, double l_pde, const AdaptiveWeights& weights);

// Partial derivatives of total_loss with respect to s_data and s_pde,
// dL/ds = 1 - l exp(-2 s), packed in an AdaptiveWeights for convenience.
AdaptiveWeights total_loss_gradient(double l_data, double l_pde, const AdaptiveWeights& weights);

// Latin hypercube sample of `n` points: along each axis exactly one point per
// stratum of width (hi - lo) / n. Deterministic per seed.
CollocationBatch sample_lhs(const Box3& bounds, std::size_t n, std::uint64_t seed);

// `n` (position, time sample) pairs drawn uniformly with replacement from the
// grid, with their measured pressure as targets.
DataBatch sample_data(const FieldGrid& grid, std::size_t n, std::uint64_t seed);

}  // namespace wavefield
