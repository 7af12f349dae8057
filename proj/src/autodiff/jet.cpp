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

#include "wavefield/autodiff/jet.hpp"

#include <string>

#include "wavefield/autodiff/fast_math.hpp"
#include "wavefield/errors.hpp"

namespace wavefield::ad {
namespace {

struct SinCos {
  Eigen::ArrayXXd sin, cos;
};

SinCos sincos_of(const Eigen::ArrayXXd& arg) {
  SinCos out{Eigen::ArrayXXd(arg.rows(), arg.cols()), Eigen::ArrayXXd(arg.rows(), arg.cols())};
  sincos_array(arg.data(), out.sin.data(), out.cos.data(), static_cast<std::size_t>(arg.size()));
  return out;
}

void require_same_shape(const JetBatch& a, const JetBatch& b, const char* op) {
  if (a.features() != b.features() || a.batch() != b.batch() ||
      a.channels() != b.channels()) {
    throw ShapeError(std::string(op) + ": jet batch shapes differ (" +
                     std::to_string(a.features()) + "x" + std::to_string(a.batch()) + "x" +
                     std::to_string(a.channels()) + " vs " + std::to_string(b.features()) +
                     "x" + std::to_string(b.batch()) + "x" + std::to_string(b.channels()) +
                     ")");
  }
}

}  // namespace

JetBatch::JetBatch(Eigen::Index features, Eigen::Index batch, bool with_derivatives)
    : data_(Eigen::MatrixXd::Zero(features, batch * (with_derivatives ? kFullChannels : 1))),
      batch_(batch),
      channels_(with_derivatives ? kFullChannels : 1) {}

JetBatch JetBatch::zeros_like(const JetBatch& other) {
  return JetBatch(other.features(), other.batch(), other.has_derivatives());
}

JetBatch JetBatch::from_jets(std::span<const Jet2> jets) {
  JetBatch out(static_cast<Eigen::Index>(jets.size()), 1, true);
  for (std::size_t i = 0; i < jets.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    out.value()(row, 0) = jets[i].value;
    for (int k = 0; k < kAxes; ++k) {
      out.grad(k)(row, 0) = jets[i].grad[k];
      out.hdiag(k)(row, 0) = jets[i].hdiag[k];
    }
  }
  return out;
}

Jet2 JetBatch::at(Eigen::Index feature, Eigen::Index col) const {
  Jet2 jet;
  jet.value = value()(feature, col);
  if (has_derivatives()) {
    for (int k = 0; k < kAxes; ++k) {
      jet.grad[k] = grad(k)(feature, col);
      jet.hdiag[k] = hdiag(k)(feature, col);
    }
  }
  return jet;
}

std::vector<Jet2> JetBatch::column_jets(Eigen::Index col) const {
  std::vector<Jet2> out;
  out.reserve(static_cast<std::size_t>(features()));
  for (Eigen::Index f = 0; f < features(); ++f) out.push_back(at(f, col));
  return out;
}

JetBatch jet_affine(const Eigen::MatrixXd& weight, const Eigen::VectorXd& bias,
                    const JetBatch& in) {
  if (weight.cols() != in.features() || bias.size() != weight.rows()) {
    throw ShapeError("jet_affine: weight " + std::to_string(weight.rows()) + "x" +
                     std::to_string(weight.cols()) + ", bias " + std::to_string(bias.size()) +
                     ", input features " + std::to_string(in.features()));
  }
  JetBatch out(weight.rows(), in.batch(), in.has_derivatives());
  // The value channel gets its own product so that value-only and full
  // batches produce bit-identical values.
  out.value().noalias() = weight * in.value();
  out.value().colwise() += bias;
  if (in.has_derivatives()) out.derivatives().noalias() = weight * in.derivatives();
  return out;
}

JetBatch jet_sin(double omega0, const JetBatch& in) {
  JetBatch out = JetBatch::zeros_like(in);
  const Eigen::ArrayXXd arg = omega0 * in.value().array();
  const SinCos sc = sincos_of(arg);
  out.value() = sc.sin.matrix();
  if (!in.has_derivatives()) return out;
  const Eigen::ArrayXXd wc = omega0 * sc.cos;
  const Eigen::ArrayXXd w2s = (omega0 * omega0) * sc.sin;
  for (int k = 0; k < kAxes; ++k) {
    const auto g = in.grad(k).array();
    out.grad(k) = (wc * g).matrix();
    out.hdiag(k) = (wc * in.hdiag(k).array() - w2s * g.square()).matrix();
  }
  return out;
}

JetBatch jet_mul(const JetBatch& a, const JetBatch& b) {
  require_same_shape(a, b, "jet_mul");
  JetBatch out = JetBatch::zeros_like(a);
  const auto av = a.value().array();
  const auto bv = b.value().array();
  out.value() = (av * bv).matrix();
  if (!a.has_derivatives()) return out;
  for (int k = 0; k < kAxes; ++k) {
    const auto ag = a.grad(k).array();
    const auto bg = b.grad(k).array();
    out.grad(k) = (ag * bv + av * bg).matrix();
    out.hdiag(k) = (a.hdiag(k).array() * bv + 2.0 * ag * bg + av * b.hdiag(k).array()).matrix();
  }
  return out;
}

JetBatch jet_gate(const JetBatch& z, const JetBatch& u, const JetBatch& v) {
  require_same_shape(z, u, "jet_gate");
  require_same_shape(z, v, "jet_gate");
  JetBatch diff = JetBatch::zeros_like(u);
  diff.raw() = v.raw() - u.raw();
  JetBatch out = jet_mul(z, diff);
  out.raw() += u.raw();
  return out;
}

JetBatch jet_scale(double factor, const JetBatch& in) {
  JetBatch out = JetBatch::zeros_like(in);
  out.raw() = factor * in.raw();
  return out;
}

JetBatch jet_mul_adjoint(const JetBatch& out_adjoint, const JetBatch& other) {
  require_same_shape(out_adjoint, other, "jet_mul_adjoint");
  JetBatch adj = JetBatch::zeros_like(other);
  const auto bv = other.value().array();
  Eigen::ArrayXXd val = out_adjoint.value().array() * bv;
  if (other.has_derivatives()) {
    for (int k = 0; k < kAxes; ++k) {
      const auto ag = out_adjoint.grad(k).array();
      const auto ah = out_adjoint.hdiag(k).array();
      const auto bg = other.grad(k).array();
      val += ag * bg + ah * other.hdiag(k).array();
      adj.grad(k) = (ag * bv + 2.0 * ah * bg).matrix();
      adj.hdiag(k) = (ah * bv).matrix();
    }
  }
  adj.value() = val.matrix();
  return adj;
}

JetBatch jet_sin_adjoint(double omega0, const JetBatch& pre_activation,
                         const JetBatch& out_adjoint) {
  require_same_shape(pre_activation, out_adjoint, "jet_sin_adjoint");
  JetBatch adj = JetBatch::zeros_like(pre_activation);
  const Eigen::ArrayXXd arg = omega0 * pre_activation.value().array();
  const SinCos sc = sincos_of(arg);
  const Eigen::ArrayXXd wc = omega0 * sc.cos;
  Eigen::ArrayXXd val = out_adjoint.value().array() * wc;
  if (pre_activation.has_derivatives()) {
    const double w2 = omega0 * omega0;
    const Eigen::ArrayXXd w2s = w2 * sc.sin;
    const Eigen::ArrayXXd w3c = w2 * wc;
    for (int k = 0; k < kAxes; ++k) {
      const auto g = pre_activation.grad(k).array();
      const auto h = pre_activation.hdiag(k).array();
      const auto ag = out_adjoint.grad(k).array();
      const auto ah = out_adjoint.hdiag(k).array();
      val += -ag * w2s * g - ah * (w3c * g.square() + w2s * h);
      adj.grad(k) = (ag * wc - 2.0 * ah * w2s * g).matrix();
      adj.hdiag(k) = (ah * wc).matrix();
    }
  }
  adj.value() = val.matrix();
  return adj;
}

}  // namespace wavefield::ad
