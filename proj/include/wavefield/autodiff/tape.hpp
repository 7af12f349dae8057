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

#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "wavefield/autodiff/jet.hpp"
#include "wavefield/autodiff/param_store.hpp"

namespace wavefield::ad {

struct NodeId {
  std::size_t index = 0;
};

// Record of a forward computation over jet batches, replayed in reverse to get
// parameter gradients of a scalar loss. Because the recorded primitives act on
// second-order jets, losses built from Hessian-diagonal entries (PDE residuals)
// are differentiated exactly.
//
// The tape keeps a reference to the parameter store; the store must outlive
// the tape and stay unmodified until backward() returns.
class Tape {
 public:
  explicit Tape(const ParamStore& params) : params_(&params) {}

  // Constant leaf (network inputs, seeded with input-derivative jets).
  NodeId input(JetBatch x);
  NodeId affine(ParamId weight, ParamId bias, NodeId x);
  NodeId sin(double omega0, NodeId x);
  // (1 - z) * u + z * v
  NodeId gate(NodeId z, NodeId u, NodeId v);
  NodeId scale(double factor, NodeId x);

  // Scalar heads. `x` must have exactly one feature.
  // mean_i |x_i - target_i| over the value channel.
  NodeId mean_abs_error(NodeId x, Eigen::VectorXd targets);
  // mean_i |d2x/dx2 + d2x/dy2 - inv_c2 * d2x/dt2|
  NodeId mean_abs_wave_residual(NodeId x, double inv_c2);
  // sum of squared values over all features and batch columns.
  NodeId squared_norm(NodeId x);

  // Scalar algebra.
  // loss / (2 exp(2 s)) + s, with s a 1x1 parameter (log of the scale).
  NodeId log_scaled(NodeId loss, ParamId log_scale);
  NodeId add(NodeId a, NodeId b);

  const JetBatch& jet(NodeId id) const;
  double scalar(NodeId id) const;
  bool is_scalar(NodeId id) const;
  std::size_t size() const { return nodes_.size(); }

  // Gradient of the last recorded node (which must be a scalar) times
  // `loss_adjoint` with respect to every parameter in the store.
  ParamStore backward(double loss_adjoint) const;

 private:
  struct LeafOp {};
  struct AffineOp {
    NodeId x;
    ParamId weight, bias;
  };
  struct SinOp {
    NodeId x;
    double omega0;
  };
  struct GateOp {
    NodeId z, u, v;
  };
  struct ScaleOp {
    NodeId x;
    double factor;
  };
  struct MeanAbsErrorOp {
    NodeId x;
    Eigen::VectorXd targets;
  };
  struct MeanAbsWaveResidualOp {
    NodeId x;
    double inv_c2;
  };
  struct SquaredNormOp {
    NodeId x;
  };
  struct LogScaledOp {
    NodeId loss;
    ParamId log_scale;
  };
  struct AddOp {
    NodeId a, b;
  };
  using Op = std::variant<LeafOp, AffineOp, SinOp, GateOp, ScaleOp, MeanAbsErrorOp,
                          MeanAbsWaveResidualOp, SquaredNormOp, LogScaledOp, AddOp>;

  struct Node {
    Op op;
    JetBatch jet;
    double scalar = 0.0;
    bool is_scalar = false;
    bool needs_adjoint = true;
  };

  NodeId push_jet(Op op, JetBatch jet, bool needs_adjoint);
  NodeId push_scalar(Op op, double value, bool needs_adjoint);
  const Node& node(NodeId id, bool want_scalar) const;

  const ParamStore* params_;
  std::vector<Node> nodes_;
};

}  // namespace wavefield::ad
