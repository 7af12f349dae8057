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
#include <cstdint>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "wavefield/autodiff/jet.hpp"
#include "wavefield/autodiff/param_store.hpp"
#include "wavefield/autodiff/tape.hpp"
#include "wavefield/field.hpp"

namespace wavefield {

enum class NetKind { kMlp, kModifiedMlp };

std::string to_string(NetKind kind);
NetKind net_kind_from_string(const std::string& name);

struct NetConfig {
  NetKind kind = NetKind::kModifiedMlp;
  int depth = 3;  // hidden layers
  int width = 128;
  double omega0 = 15.0;
  Box3 input_bounds{};
  double pressure_scale = 1.0;  // Pa
  // Apply the sine activation to the output layer as well. Off by default:
  // a linear output leaves the pressure range unbounded.
  bool sigma_output = false;

  // Throws ArgumentError describing the first violated invariant.
  void validate() const;
};

// Trainable tensors. Names: "hidden.<l>.w", "hidden.<l>.b" for l in
// [0, depth), "out.w", "out.b" and, for the modified MLP, "enc_u.*" and
// "enc_v.*". Training may append further entries (adaptive loss weights);
// the network ignores names it does not use.
using NetParams = ad::ParamStore;

// Uniform SIREN initialization. First layer and encoders draw from
// [-1/n_in, 1/n_in]; deeper layers from +-sqrt(6/n_in)/omega0; biases are 0.
NetParams init_siren(const NetConfig& config, std::uint64_t seed);

// Affine map of the input box onto [-1, 1]^3 and its inverse.
SpaceTime normalize_input(const NetConfig& config, const SpaceTime& physical);
SpaceTime denormalize_input(const NetConfig& config, const SpaceTime& normalized);

// Normalized input jets for a batch of physical points: value channel holds
// the normalized coordinates, gradient channels the chain-rule seeds (so that
// derivatives come out in physical units). Value-only when
// `with_derivatives` is false.
ad::JetBatch seed_inputs(const NetConfig& config, std::span<const SpaceTime> points,
                         bool with_derivatives);

// Records the network on a tape, starting from an input node built with
// seed_inputs(). Returns the single-feature pressure node (Pa).
ad::NodeId record_forward(ad::Tape& tape, const NetParams& params, const NetConfig& config,
                          ad::NodeId input);

// Direct evaluation without a tape.
ad::JetBatch forward_batch(const NetParams& params, const NetConfig& config,
                           std::span<const SpaceTime> points, bool with_derivatives);

double forward(const NetParams& params, const NetConfig& config, const SpaceTime& point);
ad::Jet2 forward_jet(const NetParams& params, const NetConfig& config, const SpaceTime& point);

// The trained network seen as a DifferentiableField. Batches are evaluated in
// chunks to bound memory.
class NetworkField final : public DifferentiableField {
 public:
  NetworkField(NetParams params, NetConfig config)
      : params_(std::move(params)), config_(std::move(config)) {}

  ad::Jet2 query(const SpaceTime& point) const override;
  std::vector<ad::Jet2> query_batch(std::span<const SpaceTime> points) const override;
  Eigen::VectorXd evaluate(std::span<const SpaceTime> points) const override;

  const NetParams& params() const { return params_; }
  const NetConfig& config() const { return config_; }

 private:
  NetParams params_;
  NetConfig config_;
};

}  // namespace wavefield
