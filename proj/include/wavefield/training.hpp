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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wavefield/acoustics/field_grid.hpp"
#include "wavefield/autodiff/param_store.hpp"
#include "wavefield/checkpoint.hpp"
#include "wavefield/medium.hpp"
#include "wavefield/network.hpp"
#include "wavefield/physics.hpp"

namespace wavefield {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  ad::ParamStore m;
  ad::ParamStore v;
  std::int64_t t = 0;
  AdamConfig config{};

  static AdamState for_params(const ad::ParamStore& params, AdamConfig config = {});
};

// One bias-corrected Adam update of every tensor. `lr_of(id)` gives the
// learning rate of each tensor. Throws NumericError naming the tensor when a
// gradient is not finite; nothing is modified in that case.
void adam_step(AdamState& state, ad::ParamStore& params, const ad::ParamStore& grads,
               const std::function<double(ad::ParamId)>& lr_of);
void adam_step(AdamState& state, ad::ParamStore& params, const ad::ParamStore& grads, double lr);

// Names of the adaptive loss-scale tensors stored next to the network
// parameters.
inline constexpr char kLogScaleData[] = "loss.s_data";
inline constexpr char kLogScalePde[] = "loss.s_pde";

// Adds the adaptive weights to a parameter store (or overwrites them).
void set_adaptive_weights(NetParams& params, const AdaptiveWeights& weights);
AdaptiveWeights adaptive_weights(const NetParams& params);
bool is_adaptive_weight(const NetParams& params, ad::ParamId id);

struct TrainConfig {
  std::int64_t iterations = 20000;
  double lr_w = 2e-5;
  double lr_eps = 2e-4;
  std::size_t n_f = 25000;
  std::size_t n_d = 25000;
  std::uint64_t seed = 0;
  // When false the wave-equation term is dropped (plain data fit).
  bool use_pde = true;
  double eps_data_init = 1.0;
  double eps_pde_init = 10.0;
  // Collocation domain; when degenerate the network input bounds are used.
  Box3 collocation_bounds{};
  std::int64_t log_every = 100;
  // 0 checkpoints only at the end.
  std::int64_t checkpoint_every = 0;
  std::filesystem::path checkpoint_path;
  std::size_t validation_samples = 1000;
  bool clip_gradients = false;
  double clip_norm = 1.0;
  AdamConfig adam{};

  void validate() const;
};

struct TrainLogRow {
  std::int64_t iteration = 0;
  double loss_data = 0.0;
  double loss_pde = 0.0;
  double loss_total = 0.0;
  double validation_mae = 0.0;  // NaN without a validation set
  double eps_data = 0.0;
  double eps_pde = 0.0;
  double wall_seconds = 0.0;
};

using TrainLog = std::vector<TrainLogRow>;

// Where a run starts: fresh parameters or a loaded checkpoint.
struct TrainState {
  NetParams params;
  std::optional<AdamState> adam;
  std::int64_t iteration = 0;

  static TrainState from_checkpoint(const Checkpoint& checkpoint);
};

struct TrainResult {
  NetParams params;
  AdamState adam;
  TrainLog log;
  std::int64_t iteration = 0;
  std::vector<std::int64_t> checkpoint_iterations;
  Checkpoint last_checkpoint;
  bool diverged = false;
  std::string message;
};

using TrainObserver = std::function<void(const TrainLogRow&)>;

// Joint Adam descent of the network parameters (rate lr_w) and the adaptive
// loss scales (rate lr_eps) on
//   L = L_data / (2 eps_d^2) + L_pde / (2 eps_f^2) + log(eps_d eps_f)
// with fresh Latin-hypercube collocation points and uniformly drawn data
// samples every iteration. On a non-finite loss or gradient the run stops,
// keeping (and checkpointing) the last finite parameters.
TrainResult train(TrainState state, const NetConfig& net, const TrainConfig& config,
                  const FieldGrid& data, const Medium& medium,
                  const FieldGrid* validation = nullptr, const TrainObserver& observer = {});

// MAE of `field` against `validation` at randomly drawn time samples. The
// validation positions must be disjoint from `training_positions`.
double validate(const DifferentiableField& field, const FieldGrid& validation,
                const std::vector<Vec3>& training_positions, std::size_t samples,
                std::uint64_t seed);

// Network config fitted to a data set: input box spanning `domain` and the
// pressure scale set to the largest absolute training sample.
NetConfig fit_net_config(NetConfig base, const FieldGrid& data, const Box3& domain);

// Box covering the (x, y) extent of the grid and its time axis.
Box3 grid_domain(const FieldGrid& grid);

}  // namespace wavefield
