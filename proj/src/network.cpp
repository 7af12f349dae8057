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

#include "wavefield/network.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "wavefield/errors.hpp"

namespace wavefield {
namespace {

constexpr int kInputs = 3;
constexpr Eigen::Index kChunk = 4096;

std::string hidden_name(int layer, const char* what) {
  return "hidden." + std::to_string(layer) + "." + what;
}

Eigen::MatrixXd uniform_matrix(Eigen::Index rows, Eigen::Index cols, double bound,
                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  Eigen::MatrixXd m(rows, cols);
  // Fill row-major so the draw order does not depend on storage order.
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = dist(rng);
  }
  return m;
}

// Direct evaluation on jet batches.
struct DirectExec {
  using Handle = ad::JetBatch;
  const NetParams& params;

  Handle affine(ad::ParamId w, ad::ParamId b, const Handle& x) const {
    return ad::jet_affine(params[w], params[b].col(0), x);
  }
  Handle sin(double omega0, const Handle& x) const { return ad::jet_sin(omega0, x); }
  Handle gate(const Handle& z, const Handle& u, const Handle& v) const {
    return ad::jet_gate(z, u, v);
  }
  Handle scale(double f, const Handle& x) const { return ad::jet_scale(f, x); }
};

// Recording on a tape.
struct TapeExec {
  using Handle = ad::NodeId;
  ad::Tape& tape;

  Handle affine(ad::ParamId w, ad::ParamId b, Handle x) const { return tape.affine(w, b, x); }
  Handle sin(double omega0, Handle x) const { return tape.sin(omega0, x); }
  Handle gate(Handle z, Handle u, Handle v) const { return tape.gate(z, u, v); }
  Handle scale(double f, Handle x) const { return tape.scale(f, x); }
};

// The one definition of the network graph, shared by both executors.
template <class Exec>
typename Exec::Handle build_graph(const Exec& ex, const NetParams& params, const NetConfig& config,
                                  typename Exec::Handle input) {
  using Handle = typename Exec::Handle;
  const double w0 = config.omega0;
  const bool gated = config.kind == NetKind::kModifiedMlp;

  Handle u{}, v{};
  if (gated) {
    u = ex.sin(w0, ex.affine(params.id("enc_u.w"), params.id("enc_u.b"), input));
    v = ex.sin(w0, ex.affine(params.id("enc_v.w"), params.id("enc_v.b"), input));
  }
  Handle z = input;
  for (int l = 0; l < config.depth; ++l) {
    z = ex.sin(w0, ex.affine(params.id(hidden_name(l, "w")), params.id(hidden_name(l, "b")), z));
    if (gated) z = ex.gate(z, u, v);
  }
  Handle out = ex.affine(params.id("out.w"), params.id("out.b"), z);
  if (config.sigma_output) out = ex.sin(w0, out);
  return ex.scale(config.pressure_scale, out);
}

std::string describe(const SpaceTime& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(x=" << p[0] << ", y=" << p[1] << ", t=" << p[2] << ")";
  return os.str();
}

void check_finite_output(const ad::JetBatch& out, std::span<const SpaceTime> points,
                         Eigen::Index offset) {
  if (out.all_finite()) return;
  for (Eigen::Index c = 0; c < out.batch(); ++c) {
    bool ok = std::isfinite(out.value()(0, c));
    if (out.has_derivatives()) {
      for (int k = 0; k < ad::kAxes; ++k) {
        ok = ok && std::isfinite(out.grad(k)(0, c)) && std::isfinite(out.hdiag(k)(0, c));
      }
    }
    if (!ok) {
      throw NumericError("network produced a non-finite output at " +
                         describe(points[static_cast<std::size_t>(offset + c)]));
    }
  }
}

}  // namespace

std::string to_string(NetKind kind) { return kind == NetKind::kMlp ? "mlp" : "mmlp"; }

NetKind net_kind_from_string(const std::string& name) {
  if (name == "mlp") return NetKind::kMlp;
  if (name == "mmlp") return NetKind::kModifiedMlp;
  throw ArgumentError("unknown network kind '" + name + "' (expected mlp or mmlp)");
}

void NetConfig::validate() const {
  if (depth < 1) throw ArgumentError("network depth must be >= 1");
  if (width < 1) throw ArgumentError("network width must be >= 1");
  if (!(omega0 > 0.0)) throw ArgumentError("omega0 must be > 0");
  if (!input_bounds.nondegenerate()) throw ArgumentError("input bounds are degenerate");
  if (!(pressure_scale > 0.0) || !std::isfinite(pressure_scale)) {
    throw ArgumentError("pressure_scale must be positive and finite");
  }
}

NetParams init_siren(const NetConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  NetParams params;
  const double first = 1.0 / kInputs;
  const double deep = std::sqrt(6.0 / config.width) / config.omega0;

  if (config.kind == NetKind::kModifiedMlp) {
    params.add("enc_u.w", uniform_matrix(config.width, kInputs, first, rng));
    params.add("enc_u.b", Eigen::MatrixXd::Zero(config.width, 1));
    params.add("enc_v.w", uniform_matrix(config.width, kInputs, first, rng));
    params.add("enc_v.b", Eigen::MatrixXd::Zero(config.width, 1));
  }
  for (int l = 0; l < config.depth; ++l) {
    const Eigen::Index fan_in = l == 0 ? kInputs : config.width;
    params.add(hidden_name(l, "w"),
               uniform_matrix(config.width, fan_in, l == 0 ? first : deep, rng));
    params.add(hidden_name(l, "b"), Eigen::MatrixXd::Zero(config.width, 1));
  }
  params.add("out.w", uniform_matrix(1, config.width, deep, rng));
  params.add("out.b", Eigen::MatrixXd::Zero(1, 1));
  return params;
}

SpaceTime normalize_input(const NetConfig& config, const SpaceTime& physical) {
  SpaceTime out{};
  const auto& b = config.input_bounds;
  for (int i = 0; i < 3; ++i) out[i] = 2.0 * (physical[i] - b.lo[i]) / (b.hi[i] - b.lo[i]) - 1.0;
  return out;
}

SpaceTime denormalize_input(const NetConfig& config, const SpaceTime& normalized) {
  SpaceTime out{};
  const auto& b = config.input_bounds;
  for (int i = 0; i < 3; ++i) out[i] = b.lo[i] + 0.5 * (normalized[i] + 1.0) * (b.hi[i] - b.lo[i]);
  return out;
}

ad::JetBatch seed_inputs(const NetConfig& config, std::span<const SpaceTime> points,
                         bool with_derivatives) {
  const auto n = static_cast<Eigen::Index>(points.size());
  ad::JetBatch in(kInputs, n, with_derivatives);
  for (Eigen::Index c = 0; c < n; ++c) {
    const SpaceTime xn = normalize_input(config, points[static_cast<std::size_t>(c)]);
    for (int i = 0; i < kInputs; ++i) in.value()(i, c) = xn[i];
  }
  if (with_derivatives) {
    const auto& b = config.input_bounds;
    for (int k = 0; k < ad::kAxes; ++k) {
      in.grad(k).row(k).setConstant(2.0 / (b.hi[k] - b.lo[k]));
    }
  }
  return in;
}

ad::NodeId record_forward(ad::Tape& tape, const NetParams& params, const NetConfig& config,
                          ad::NodeId input) {
  return build_graph(TapeExec{tape}, params, config, input);
}

ad::JetBatch forward_batch(const NetParams& params, const NetConfig& config,
                           std::span<const SpaceTime> points, bool with_derivatives) {
  ad::JetBatch out =
      build_graph(DirectExec{params}, params, config, seed_inputs(config, points, with_derivatives));
  check_finite_output(out, points, 0);
  return out;
}

double forward(const NetParams& params, const NetConfig& config, const SpaceTime& point) {
  return forward_batch(params, config, std::span(&point, 1), false).value()(0, 0);
}

ad::Jet2 forward_jet(const NetParams& params, const NetConfig& config, const SpaceTime& point) {
  return forward_batch(params, config, std::span(&point, 1), true).at(0, 0);
}

ad::Jet2 NetworkField::query(const SpaceTime& point) const {
  return forward_jet(params_, config_, point);
}

std::vector<ad::Jet2> NetworkField::query_batch(std::span<const SpaceTime> points) const {
  std::vector<ad::Jet2> out;
  out.reserve(points.size());
  const auto n = static_cast<Eigen::Index>(points.size());
  for (Eigen::Index start = 0; start < n; start += kChunk) {
    const Eigen::Index len = std::min(kChunk, n - start);
    const auto chunk = points.subspan(static_cast<std::size_t>(start), static_cast<std::size_t>(len));
    const ad::JetBatch jets = forward_batch(params_, config_, chunk, true);
    for (Eigen::Index c = 0; c < len; ++c) out.push_back(jets.at(0, c));
  }
  return out;
}

Eigen::VectorXd NetworkField::evaluate(std::span<const SpaceTime> points) const {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::VectorXd out(n);
  for (Eigen::Index start = 0; start < n; start += kChunk) {
    const Eigen::Index len = std::min(kChunk, n - start);
    const auto chunk = points.subspan(static_cast<std::size_t>(start), static_cast<std::size_t>(len));
    out.segment(start, len) = forward_batch(params_, config_, chunk, false).value().row(0).transpose();
  }
  return out;
}

}  // namespace wavefield
