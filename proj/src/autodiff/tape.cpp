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

#include "wavefield/autodiff/tape.hpp"

#include <cmath>
#include <string>

#include "wavefield/errors.hpp"

namespace wavefield::ad {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sign(double v) { return (v > 0.0) - (v < 0.0); }

void accumulate(JetBatch& target, JetBatch&& contribution) {
  if (target.batch() == 0 && target.features() == 0) {
    target = std::move(contribution);
  } else {
    target.raw() += contribution.raw();
  }
}

void require_single_feature(const JetBatch& x, const char* op) {
  if (x.features() != 1) {
    throw ShapeError(std::string(op) + ": expected a single-feature batch, got " +
                     std::to_string(x.features()) + " features");
  }
}

}  // namespace

NodeId Tape::push_jet(Op op, JetBatch jet, bool needs_adjoint) {
  nodes_.push_back(Node{std::move(op), std::move(jet), 0.0, false, needs_adjoint});
  return NodeId{nodes_.size() - 1};
}

NodeId Tape::push_scalar(Op op, double value, bool needs_adjoint) {
  nodes_.push_back(Node{std::move(op), JetBatch{}, value, true, needs_adjoint});
  return NodeId{nodes_.size() - 1};
}

const Tape::Node& Tape::node(NodeId id, bool want_scalar) const {
  if (id.index >= nodes_.size()) throw StateError("tape node index out of range");
  const Node& n = nodes_[id.index];
  if (n.is_scalar != want_scalar) {
    throw StateError(want_scalar ? "expected a scalar tape node" : "expected a jet tape node");
  }
  return n;
}

const JetBatch& Tape::jet(NodeId id) const { return node(id, false).jet; }
double Tape::scalar(NodeId id) const { return node(id, true).scalar; }
bool Tape::is_scalar(NodeId id) const {
  if (id.index >= nodes_.size()) throw StateError("tape node index out of range");
  return nodes_[id.index].is_scalar;
}

NodeId Tape::input(JetBatch x) { return push_jet(LeafOp{}, std::move(x), false); }

NodeId Tape::affine(ParamId weight, ParamId bias, NodeId x) {
  const Eigen::MatrixXd& w = (*params_)[weight];
  const Eigen::MatrixXd& b = (*params_)[bias];
  if (b.cols() != 1) throw ShapeError("affine: bias must be a column vector");
  JetBatch out = jet_affine(w, b.col(0), jet(x));
  return push_jet(AffineOp{x, weight, bias}, std::move(out), true);
}

NodeId Tape::sin(double omega0, NodeId x) {
  const Node& in = node(x, false);
  return push_jet(SinOp{x, omega0}, jet_sin(omega0, in.jet), in.needs_adjoint);
}

NodeId Tape::gate(NodeId z, NodeId u, NodeId v) {
  const Node& nz = node(z, false);
  const Node& nu = node(u, false);
  const Node& nv = node(v, false);
  return push_jet(GateOp{z, u, v}, jet_gate(nz.jet, nu.jet, nv.jet),
                  nz.needs_adjoint || nu.needs_adjoint || nv.needs_adjoint);
}

NodeId Tape::scale(double factor, NodeId x) {
  const Node& in = node(x, false);
  return push_jet(ScaleOp{x, factor}, jet_scale(factor, in.jet), in.needs_adjoint);
}

NodeId Tape::mean_abs_error(NodeId x, Eigen::VectorXd targets) {
  const Node& in = node(x, false);
  require_single_feature(in.jet, "mean_abs_error");
  if (targets.size() != in.jet.batch()) {
    throw ShapeError("mean_abs_error: " + std::to_string(targets.size()) + " targets for batch of " +
                     std::to_string(in.jet.batch()));
  }
  if (targets.size() == 0) throw ArgumentError("mean_abs_error: empty batch");
  const double loss = (in.jet.value().row(0).transpose() - targets).cwiseAbs().mean();
  return push_scalar(MeanAbsErrorOp{x, std::move(targets)}, loss, in.needs_adjoint);
}

NodeId Tape::mean_abs_wave_residual(NodeId x, double inv_c2) {
  const Node& in = node(x, false);
  require_single_feature(in.jet, "mean_abs_wave_residual");
  if (!in.jet.has_derivatives()) {
    throw ShapeError("mean_abs_wave_residual: batch carries no derivative channels");
  }
  if (in.jet.batch() == 0) throw ArgumentError("mean_abs_wave_residual: empty batch");
  const Eigen::ArrayXXd r = in.jet.hdiag(kX).array() + in.jet.hdiag(kY).array() -
                            inv_c2 * in.jet.hdiag(kT).array();
  return push_scalar(MeanAbsWaveResidualOp{x, inv_c2}, r.abs().mean(), in.needs_adjoint);
}

NodeId Tape::squared_norm(NodeId x) {
  const Node& in = node(x, false);
  return push_scalar(SquaredNormOp{x}, in.jet.value().squaredNorm(), in.needs_adjoint);
}

NodeId Tape::log_scaled(NodeId loss, ParamId log_scale) {
  const double l = scalar(loss);
  const Eigen::MatrixXd& s = (*params_)[log_scale];
  if (s.size() != 1) throw ShapeError("log_scaled: log scale must be a 1x1 parameter");
  const double sv = s(0, 0);
  return push_scalar(LogScaledOp{loss, log_scale}, l / (2.0 * std::exp(2.0 * sv)) + sv, true);
}

NodeId Tape::add(NodeId a, NodeId b) {
  const Node& na = node(a, true);
  const Node& nb = node(b, true);
  return push_scalar(AddOp{a, b}, na.scalar + nb.scalar, na.needs_adjoint || nb.needs_adjoint);
}

ParamStore Tape::backward(double loss_adjoint) const {
  if (nodes_.empty()) throw StateError("backward: tape is empty");
  if (!nodes_.back().is_scalar) {
    throw StateError("backward: tape does not end in a scalar loss");
  }

  ParamStore grads = params_->zeros_like();
  std::vector<JetBatch> adj(nodes_.size());
  std::vector<double> sadj(nodes_.size(), 0.0);
  sadj.back() = loss_adjoint;

  auto wants = [&](NodeId id) { return nodes_[id.index].needs_adjoint; };

  for (std::size_t i = nodes_.size(); i-- > 0;) {
    const Node& n = nodes_[i];
    if (!n.needs_adjoint) continue;
    if (!n.is_scalar && adj[i].features() == 0) continue;  // no path to the loss
    std::visit(
        Overloaded{
            [](const LeafOp&) {},
            [&](const AffineOp& op) {
              const JetBatch& a = adj[i];
              const JetBatch& x = nodes_[op.x.index].jet;
              grads[op.weight].noalias() += a.raw() * x.raw().transpose();
              grads[op.bias].col(0) += a.value().rowwise().sum();
              if (wants(op.x)) {
                JetBatch dx = JetBatch::zeros_like(x);
                dx.raw().noalias() = (*params_)[op.weight].transpose() * a.raw();
                accumulate(adj[op.x.index], std::move(dx));
              }
            },
            [&](const SinOp& op) {
              accumulate(adj[op.x.index],
                         jet_sin_adjoint(op.omega0, nodes_[op.x.index].jet, adj[i]));
            },
            [&](const GateOp& op) {
              const JetBatch& z = nodes_[op.z.index].jet;
              const JetBatch& u = nodes_[op.u.index].jet;
              const JetBatch& v = nodes_[op.v.index].jet;
              const JetBatch& a = adj[i];
              // out = u + z * (v - u)
              JetBatch diff = JetBatch::zeros_like(u);
              diff.raw() = v.raw() - u.raw();
              if (wants(op.z)) accumulate(adj[op.z.index], jet_mul_adjoint(a, diff));
              if (wants(op.u) || wants(op.v)) {
                JetBatch ddiff = jet_mul_adjoint(a, z);
                if (wants(op.u)) {
                  JetBatch du = JetBatch::zeros_like(u);
                  du.raw() = a.raw() - ddiff.raw();
                  accumulate(adj[op.u.index], std::move(du));
                }
                if (wants(op.v)) accumulate(adj[op.v.index], std::move(ddiff));
              }
            },
            [&](const ScaleOp& op) { accumulate(adj[op.x.index], jet_scale(op.factor, adj[i])); },
            [&](const MeanAbsErrorOp& op) {
              const JetBatch& x = nodes_[op.x.index].jet;
              JetBatch dx = JetBatch::zeros_like(x);
              const double w = sadj[i] / static_cast<double>(x.batch());
              for (Eigen::Index c = 0; c < x.batch(); ++c) {
                dx.value()(0, c) = w * sign(x.value()(0, c) - op.targets(c));
              }
              accumulate(adj[op.x.index], std::move(dx));
            },
            [&](const MeanAbsWaveResidualOp& op) {
              const JetBatch& x = nodes_[op.x.index].jet;
              JetBatch dx = JetBatch::zeros_like(x);
              const double w = sadj[i] / static_cast<double>(x.batch());
              for (Eigen::Index c = 0; c < x.batch(); ++c) {
                const double r = x.hdiag(kX)(0, c) + x.hdiag(kY)(0, c) - op.inv_c2 * x.hdiag(kT)(0, c);
                const double g = w * sign(r);
                dx.hdiag(kX)(0, c) = g;
                dx.hdiag(kY)(0, c) = g;
                dx.hdiag(kT)(0, c) = -op.inv_c2 * g;
              }
              accumulate(adj[op.x.index], std::move(dx));
            },
            [&](const SquaredNormOp& op) {
              const JetBatch& x = nodes_[op.x.index].jet;
              JetBatch dx = JetBatch::zeros_like(x);
              dx.value() = (2.0 * sadj[i]) * x.value();
              accumulate(adj[op.x.index], std::move(dx));
            },
            [&](const LogScaledOp& op) {
              const double s = (*params_)[op.log_scale](0, 0);
              const double l = nodes_[op.loss.index].scalar;
              const double inv = std::exp(-2.0 * s);
              sadj[op.loss.index] += sadj[i] * 0.5 * inv;
              grads[op.log_scale](0, 0) += sadj[i] * (1.0 - l * inv);
            },
            [&](const AddOp& op) {
              sadj[op.a.index] += sadj[i];
              sadj[op.b.index] += sadj[i];
            },
        },
        n.op);
    // Adjoints are consumed exactly once; release memory early.
    if (!n.is_scalar) adj[i] = JetBatch{};
  }
  return grads;
}

}  // namespace wavefield::ad
