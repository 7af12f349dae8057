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

#include "wavefield/training.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "wavefield/autodiff/tape.hpp"
#include "wavefield/errors.hpp"
#include "wavefield/random.hpp"

namespace wavefield {
namespace {

constexpr std::uint64_t kCollocationStream = 1;
constexpr std::uint64_t kDataStream = 2;
constexpr std::uint64_t kValidationStream = 3;

double global_norm(const ad::ParamStore& grads, const std::function<bool(ad::ParamId)>& include) {
  double sq = 0.0;
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (include(ad::ParamId{i})) sq += grads[ad::ParamId{i}].squaredNorm();
  }
  return std::sqrt(sq);
}

// Every iteration allocates and frees jet batches of several megabytes. With
// glibc defaults each of them is a fresh mmap whose pages fault in on first
// touch; keeping them on the heap roughly halves the step time.
void keep_large_blocks_on_heap() {
#if defined(__GLIBC__)
  mallopt(M_MMAP_THRESHOLD, 32 * 1024 * 1024);
  mallopt(M_TRIM_THRESHOLD, 512 * 1024 * 1024);
#endif
}

Checkpoint make_checkpoint(const NetConfig& net, const NetParams& params, const AdamState& adam,
                           std::int64_t iteration) {
  return Checkpoint{net, params, iteration, OptimizerMoments{adam.m, adam.v, adam.t}};
}

}  // namespace

AdamState AdamState::for_params(const ad::ParamStore& params, AdamConfig config) {
  return AdamState{params.zeros_like(), params.zeros_like(), 0, config};
}

void adam_step(AdamState& state, ad::ParamStore& params, const ad::ParamStore& grads,
               const std::function<double(ad::ParamId)>& lr_of) {
  if (!params.same_layout(grads) || !params.same_layout(state.m) || !params.same_layout(state.v)) {
    throw ShapeError("adam_step: parameter, gradient and moment layouts differ");
  }
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (!grads[ad::ParamId{i}].allFinite()) {
      throw NumericError("non-finite gradient for parameter '" + grads.name(ad::ParamId{i}) + "'");
    }
  }
  const auto& c = state.config;
  state.t += 1;
  const double t = static_cast<double>(state.t);
  const double bias1 = 1.0 - std::pow(c.beta1, t);
  const double bias2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < grads.size(); ++i) {
    const ad::ParamId id{i};
    const auto g = grads[id].array();
    auto m = state.m[id].array();
    auto v = state.v[id].array();
    m = c.beta1 * m + (1.0 - c.beta1) * g;
    v = c.beta2 * v + (1.0 - c.beta2) * g.square();
    params[id].array() -= lr_of(id) * (m / bias1) / ((v / bias2).sqrt() + c.eps);
  }
}

void adam_step(AdamState& state, ad::ParamStore& params, const ad::ParamStore& grads, double lr) {
  adam_step(state, params, grads, [lr](ad::ParamId) { return lr; });
}

void set_adaptive_weights(NetParams& params, const AdaptiveWeights& weights) {
  auto put = [&](const char* name, double value) {
    if (auto id = params.find(name)) {
      params[*id](0, 0) = value;
    } else {
      params.add(name, Eigen::MatrixXd::Constant(1, 1, value));
    }
  };
  put(kLogScaleData, weights.s_data);
  put(kLogScalePde, weights.s_pde);
}

AdaptiveWeights adaptive_weights(const NetParams& params) {
  return {params[kLogScaleData](0, 0), params[kLogScalePde](0, 0)};
}

bool is_adaptive_weight(const NetParams& params, ad::ParamId id) {
  const auto& name = params.name(id);
  return name == kLogScaleData || name == kLogScalePde;
}

void TrainConfig::validate() const {
  if (iterations < 1) throw ArgumentError("iterations must be >= 1");
  if (!(lr_w > 0.0) || !(lr_eps > 0.0)) throw ArgumentError("learning rates must be > 0");
  if (n_d < 1) throw ArgumentError("n_d must be >= 1");
  if (use_pde && n_f < 1) throw ArgumentError("n_f must be >= 1");
  if (!(eps_data_init > 0.0) || !(eps_pde_init > 0.0)) {
    throw ArgumentError("initial adaptive scales must be > 0");
  }
  if (log_every < 1) throw ArgumentError("log_every must be >= 1");
  if (checkpoint_every < 0) throw ArgumentError("checkpoint_every must be >= 0");
  if (clip_gradients && !(clip_norm > 0.0)) throw ArgumentError("clip_norm must be > 0");
}

TrainState TrainState::from_checkpoint(const Checkpoint& checkpoint) {
  TrainState s;
  s.params = checkpoint.params;
  s.iteration = checkpoint.iteration;
  if (checkpoint.moments) {
    s.adam = AdamState{checkpoint.moments->first, checkpoint.moments->second,
                       checkpoint.moments->step, AdamConfig{}};
  }
  return s;
}

TrainResult train(TrainState state, const NetConfig& net, const TrainConfig& config,
                  const FieldGrid& data, const Medium& medium, const FieldGrid* validation,
                  const TrainObserver& observer) {
  net.validate();
  config.validate();
  medium.validate();
  if (data.empty()) throw ArgumentError("train: training data is empty");
  keep_large_blocks_on_heap();

  TrainResult result;
  NetParams& params = result.params;
  params = std::move(state.params);
  if (!params.find(kLogScaleData) || !params.find(kLogScalePde)) {
    set_adaptive_weights(params,
                         AdaptiveWeights::from_scales(config.eps_data_init, config.eps_pde_init));
  }
  if (state.adam) {
    result.adam = std::move(*state.adam);
    result.adam.config = config.adam;
    if (!result.adam.m.same_layout(params)) {
      throw ArgumentError("train: optimizer state does not match the parameters");
    }
  } else {
    result.adam = AdamState::for_params(params, config.adam);
  }

  const ad::ParamId s_data = params.id(kLogScaleData);
  const ad::ParamId s_pde = params.id(kLogScalePde);
  const auto is_weight = [&](ad::ParamId id) { return id == s_data || id == s_pde; };
  const auto lr_of = [&](ad::ParamId id) { return is_weight(id) ? config.lr_eps : config.lr_w; };
  const Box3 bounds =
      config.collocation_bounds.nondegenerate() ? config.collocation_bounds : net.input_bounds;
  const double inv_c2 = 1.0 / (medium.c * medium.c);

  if (validation != nullptr) {
    // Fails early on overlapping positions.
    validate(NetworkField(params, net), *validation, data.positions, 1, config.seed);
  }

  const auto started = std::chrono::steady_clock::now();
  const std::int64_t first = state.iteration + 1;
  const std::int64_t last = state.iteration + config.iterations;
  result.iteration = state.iteration;

  auto checkpoint = [&](std::int64_t iteration) {
    result.last_checkpoint = make_checkpoint(net, params, result.adam, iteration);
    result.checkpoint_iterations.push_back(iteration);
    if (!config.checkpoint_path.empty()) save_checkpoint(result.last_checkpoint, config.checkpoint_path);
  };

  for (std::int64_t iter = first; iter <= last; ++iter) {
    const auto step = static_cast<std::uint64_t>(iter);
    ad::Tape tape(params);

    DataBatch batch = sample_data(data, config.n_d, mix_seed(config.seed, kDataStream, step));
    const ad::NodeId data_in = tape.input(seed_inputs(net, batch.points, false));
    const ad::NodeId data_out = record_forward(tape, params, net, data_in);
    const ad::NodeId data_loss = tape.mean_abs_error(data_out, std::move(batch.targets));
    ad::NodeId loss = tape.log_scaled(data_loss, s_data);

    double pde_loss_value = std::numeric_limits<double>::quiet_NaN();
    if (config.use_pde) {
      const CollocationBatch colloc =
          sample_lhs(bounds, config.n_f, mix_seed(config.seed, kCollocationStream, step));
      const ad::NodeId pde_in = tape.input(seed_inputs(net, colloc.points, true));
      const ad::NodeId pde_out = record_forward(tape, params, net, pde_in);
      const ad::NodeId pde_loss = tape.mean_abs_wave_residual(pde_out, inv_c2);
      pde_loss_value = tape.scalar(pde_loss);
      loss = tape.add(loss, tape.log_scaled(pde_loss, s_pde));
    }

    const double total = tape.scalar(loss);
    const double data_loss_value = tape.scalar(data_loss);
    auto stop_diverged = [&](const std::string& why) {
      result.diverged = true;
      result.message = "diverged at iteration " + std::to_string(iter) + ": " + why;
      checkpoint(result.iteration);
    };
    if (!std::isfinite(total)) {
      stop_diverged("non-finite loss");
      break;
    }

    ad::ParamStore grads = tape.backward(1.0);
    if (config.clip_gradients) {
      const auto is_net = [&](ad::ParamId id) { return !is_weight(id); };
      const double norm = global_norm(grads, is_net);
      if (std::isfinite(norm) && norm > config.clip_norm) {
        for (std::size_t i = 0; i < grads.size(); ++i) {
          if (is_net(ad::ParamId{i})) grads[ad::ParamId{i}] *= config.clip_norm / norm;
        }
      }
    }
    try {
      adam_step(result.adam, params, grads, lr_of);
    } catch (const NumericError& e) {
      stop_diverged(e.what());
      break;
    }
    result.iteration = iter;

    if (iter % config.log_every == 0 || iter == last) {
      TrainLogRow row;
      row.iteration = iter;
      row.loss_data = data_loss_value;
      row.loss_pde = pde_loss_value;
      row.loss_total = total;
      row.validation_mae = std::numeric_limits<double>::quiet_NaN();
      if (validation != nullptr) {
        row.validation_mae =
            validate(NetworkField(params, net), *validation, data.positions,
                     config.validation_samples, mix_seed(config.seed, kValidationStream, step));
      }
      const AdaptiveWeights w = adaptive_weights(params);
      row.eps_data = w.eps_data();
      row.eps_pde = w.eps_pde();
      row.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      result.log.push_back(row);
      if (observer) observer(row);
    }
    if ((config.checkpoint_every > 0 && iter % config.checkpoint_every == 0) || iter == last) {
      checkpoint(iter);
    }
  }
  return result;
}

double validate(const DifferentiableField& field, const FieldGrid& validation,
                const std::vector<Vec3>& training_positions, std::size_t samples,
                std::uint64_t seed) {
  if (validation.empty()) throw ArgumentError("validate: validation grid is empty");
  if (samples < 1) throw ArgumentError("validate: need at least one sample");
  for (const auto& p : validation.positions) {
    for (const auto& q : training_positions) {
      if (planar_distance(p, q) < 1e-9 && std::abs(p[2] - q[2]) < 1e-9) {
        throw ArgumentError("validation position coincides with a training position");
      }
    }
  }
  const DataBatch batch = sample_data(validation, samples, seed);
  return loss_data(field, batch);
}

Box3 grid_domain(const FieldGrid& grid) {
  if (grid.empty()) throw ArgumentError("grid_domain: grid is empty");
  Box3 box;
  box.lo = {grid.positions[0][0], grid.positions[0][1], grid.t0};
  box.hi = {grid.positions[0][0], grid.positions[0][1], grid.time(grid.samples() - 1)};
  for (const auto& p : grid.positions) {
    for (int i = 0; i < 2; ++i) {
      box.lo[i] = std::min(box.lo[i], p[i]);
      box.hi[i] = std::max(box.hi[i], p[i]);
    }
  }
  // A single receiver or a single sample still needs a usable box.
  for (int i = 0; i < 3; ++i) {
    if (!(box.hi[i] > box.lo[i])) {
      const double pad = i < 2 ? 0.05 : 0.5 / grid.fs;
      box.lo[i] -= pad;
      box.hi[i] += pad;
    }
  }
  return box;
}

NetConfig fit_net_config(NetConfig base, const FieldGrid& data, const Box3& domain) {
  base.input_bounds = domain;
  const double peak = data.pressure.size() > 0 ? data.pressure.cwiseAbs().maxCoeff() : 0.0;
  base.pressure_scale = peak > 0.0 ? peak : 1.0;
  return base;
}

}  // namespace wavefield
