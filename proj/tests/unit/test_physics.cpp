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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "wavefield/acoustics/field_grid.hpp"
#include "wavefield/errors.hpp"
#include "wavefield/physics.hpp"

using namespace wavefield;

namespace {

// p = A sin(kx x + ky y - w t) + b, analytic jets.
class SineField final : public DifferentiableField {
 public:
  SineField(double kx, double ky, double w, double amp, double offset = 0.0)
      : kx_(kx), ky_(ky), w_(w), a_(amp), b_(offset) {}
  ad::Jet2 query(const SpaceTime& p) const override {
    const double ph = kx_ * p[0] + ky_ * p[1] - w_ * p[2];
    const double s = std::sin(ph), c = std::cos(ph);
    const std::array<double, 3> k{kx_, ky_, -w_};
    ad::Jet2 j;
    j.value = a_ * s + b_;
    for (int i = 0; i < 3; ++i) {
      j.grad[i] = a_ * k[i] * c;
      j.hdiag[i] = -a_ * k[i] * k[i] * s;
    }
    return j;
  }

 private:
  double kx_, ky_, w_, a_, b_;
};

std::vector<SpaceTime> random_points(std::size_t n) {
  std::vector<SpaceTime> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n);
    pts.push_back({std::sin(7.1 * u), std::cos(3.3 * u) - 0.5, 0.05 * u});
  }
  return pts;
}

}  // namespace

TEST_CASE("residual of a travelling wave vanishes") {
  const Medium m;
  const double w = 2 * std::numbers::pi * 400.0;
  const double k = w / m.c;
  const SineField f(k * std::cos(0.7), k * std::sin(0.7), w, 1.3);
  const Eigen::VectorXd r = pde_residual(f, m, random_points(1000));
  // Each term is of size k^2 A ~ 70 Pa/m^2.
  CHECK(r.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("residual of a mismatched wave equals the dispersion error") {
  const Medium m;
  const double w = 2 * std::numbers::pi * 200.0;
  const double k = 1.1 * w / m.c;
  const SineField f(k, 0.0, w, 2.0);
  const auto pts = random_points(50);
  const Eigen::VectorXd r = pde_residual(f, m, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double s = std::sin(k * pts[i][0] - w * pts[i][2]);
    const double expected = -2.0 * (k * k - w * w / (m.c * m.c)) * s;
    CHECK(r(static_cast<Eigen::Index>(i)) == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(loss_pde(f, m, CollocationBatch{pts}) == doctest::Approx(r.cwiseAbs().mean()));
}

TEST_CASE("data loss is the mean absolute misfit") {
  const SineField truth(3.0, 1.0, 50.0, 1.0);
  const SineField shifted(3.0, 1.0, 50.0, 1.0, 0.25);
  DataBatch batch;
  batch.points = random_points(64);
  batch.targets = truth.evaluate(batch.points);
  CHECK(loss_data(truth, batch) == doctest::Approx(0.0));
  CHECK(loss_data(shifted, batch) == doctest::Approx(0.25));
  batch.targets.conservativeResize(10);
  CHECK_THROWS_AS(loss_data(truth, batch), ShapeError);
}

TEST_CASE("total loss and its scale gradient") {
  const AdaptiveWeights w = AdaptiveWeights::from_scales(0.8, 12.0);
  const double ld = 0.3, lf = 40.0;
  const double expected = ld / (2 * 0.8 * 0.8) + lf / (2 * 144.0) + std::log(0.8 * 12.0);
  CHECK(total_loss(ld, lf, w) == doctest::Approx(expected).epsilon(1e-14));

  const AdaptiveWeights g = total_loss_gradient(ld, lf, w);
  const double h = 1e-6;
  AdaptiveWeights a = w, b = w;
  a.s_data += h;
  b.s_data -= h;
  CHECK(g.s_data == doctest::Approx((total_loss(ld, lf, a) - total_loss(ld, lf, b)) / (2 * h)).epsilon(1e-7));
  a = w;
  b = w;
  a.s_pde += h;
  b.s_pde -= h;
  CHECK(g.s_pde == doctest::Approx((total_loss(ld, lf, a) - total_loss(ld, lf, b)) / (2 * h)).epsilon(1e-7));
  // Stationary where eps^2 equals the loss.
  const AdaptiveWeights opt = AdaptiveWeights::from_scales(std::sqrt(ld), std::sqrt(lf));
  const AdaptiveWeights g0 = total_loss_gradient(ld, lf, opt);
  CHECK(std::abs(g0.s_data) < 1e-14);
  CHECK(std::abs(g0.s_pde) < 1e-14);
}

TEST_CASE("latin hypercube sampling is stratified and seeded") {
  const Box3 box{{-0.4, -0.3, 0.0}, {0.4, 0.5, 0.05}};
  const std::size_t n = 200;
  const CollocationBatch a = sample_lhs(box, n, 11);
  REQUIRE(a.points.size() == n);
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<int> hits(n, 0);
    for (const auto& p : a.points) {
      CHECK(box.contains(p));
      const double u = (p[axis] - box.lo[axis]) / (box.hi[axis] - box.lo[axis]);
      const auto s = std::min<std::size_t>(static_cast<std::size_t>(u * static_cast<double>(n)), n - 1);
      ++hits[s];
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  CHECK(sample_lhs(box, n, 11).points == a.points);
  CHECK_FALSE(sample_lhs(box, n, 12).points == a.points);
}

TEST_CASE("data sampling draws grid entries") {
  FieldGrid g;
  g.positions = rectangular_positions(4, 3, 0.0, 0.0, 0.1, 0.2);
  g.fs = 1000.0;
  g.t0 = 0.01;
  g.pressure = Eigen::MatrixXd::Random(20, 12);
  const DataBatch b = sample_data(g, 500, 3);
  REQUIRE(b.points.size() == 500);
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    const auto& p = b.points[i];
    const auto m = g.find_position({p[0], p[1], 0.0});
    REQUIRE(m >= 0);
    const double n = (p[2] - g.t0) * g.fs;
    CHECK(std::abs(n - std::round(n)) < 1e-9);
    CHECK(b.targets(static_cast<Eigen::Index>(i)) == g.pressure(static_cast<Eigen::Index>(std::lround(n)), m));
  }
  CHECK(sample_data(g, 500, 3).points == b.points);
}
