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
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wavefield::ad {

// Input axes carried by jets: x, y (meters) and t (seconds).
inline constexpr int kAxes = 3;
enum Axis : int { kX = 0, kY = 1, kT = 2 };

// Value, input gradient and input Hessian diagonal of a scalar field at one
// point.
struct Jet2 {
  double value = 0.0;
  std::array<double, kAxes> grad{};
  std::array<double, kAxes> hdiag{};

  static Jet2 constant(double v) { return Jet2{v, {}, {}}; }
};

// A batch of jets for a vector of features.
//
// Storage is one matrix of `features` rows. The columns hold the channels
// back to back, each `batch` wide: channel 0 is the value, channels 1..3 the
// gradient along x, y, t and channels 4..6 the Hessian diagonal. A value-only
// batch has a single channel and is used where no input derivatives are
// needed (data-misfit terms, plain evaluation).
class JetBatch {
 public:
  static constexpr int kFullChannels = 1 + 2 * kAxes;

  JetBatch() = default;
  JetBatch(Eigen::Index features, Eigen::Index batch, bool with_derivatives);

  static JetBatch zeros_like(const JetBatch& other);

  // Builds a single-column batch from a vector of per-feature jets.
  static JetBatch from_jets(std::span<const Jet2> jets);
  std::vector<Jet2> column_jets(Eigen::Index col) const;
  Jet2 at(Eigen::Index feature, Eigen::Index col) const;

  Eigen::Index features() const { return data_.rows(); }
  Eigen::Index batch() const { return batch_; }
  int channels() const { return channels_; }
  bool has_derivatives() const { return channels_ == kFullChannels; }

  auto channel(int c) { return data_.middleCols(c * batch_, batch_); }
  auto channel(int c) const { return data_.middleCols(c * batch_, batch_); }
  auto value() { return channel(0); }
  auto value() const { return channel(0); }
  auto grad(int axis) { return channel(1 + axis); }
  auto grad(int axis) const { return channel(1 + axis); }
  auto hdiag(int axis) { return channel(1 + kAxes + axis); }
  auto hdiag(int axis) const { return channel(1 + kAxes + axis); }
  // All derivative channels as one block (empty for value-only batches).
  auto derivatives() { return data_.rightCols((channels_ - 1) * batch_); }
  auto derivatives() const { return data_.rightCols((channels_ - 1) * batch_); }

  Eigen::MatrixXd& raw() { return data_; }
  const Eigen::MatrixXd& raw() const { return data_; }

  bool all_finite() const { return data_.allFinite(); }

 private:
  Eigen::MatrixXd data_;
  Eigen::Index batch_ = 0;
  int channels_ = 1;
};

// out = W * in + b. The bias only enters the value channel; derivative
// channels are transformed linearly.
JetBatch jet_affine(const Eigen::MatrixXd& weight, const Eigen::VectorXd& bias,
                    const JetBatch& in);

// Element-wise sin(omega0 * u) with exact first and second derivatives.
JetBatch jet_sin(double omega0, const JetBatch& in);

// Element-wise (1 - z) * u + z * v.
JetBatch jet_gate(const JetBatch& z, const JetBatch& u, const JetBatch& v);

// Element-wise product a * b (second-order product rule).
JetBatch jet_mul(const JetBatch& a, const JetBatch& b);

JetBatch jet_scale(double factor, const JetBatch& in);

// Adjoint of jet_mul with respect to `a`, given the adjoint of the product and
// the other factor `b`. By symmetry the same routine yields the adjoint with
// respect to `b` when called with `a`.
JetBatch jet_mul_adjoint(const JetBatch& out_adjoint, const JetBatch& other);

// Adjoint of jet_sin with respect to its input.
JetBatch jet_sin_adjoint(double omega0, const JetBatch& pre_activation,
                         const JetBatch& out_adjoint);

}  // namespace wavefield::ad
