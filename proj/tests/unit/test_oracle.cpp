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

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "wavefield/acoustics/oracle.hpp"
#include "wavefield/errors.hpp"
#include "wavefield/physics.hpp"

using namespace wavefield;

namespace {

// Images by repeated mirroring across the six walls, keeping the shortest
// reflection sequence for each position.
struct MirrorImage {
  int order;
  double gain;
};

std::map<std::array<long long, 3>, MirrorImage> mirror_images(const RoomSpec& room, const Vec3& s) {
  auto key = [](const Vec3& p) {
    return std::array<long long, 3>{std::llround(p[0] * 1e9), std::llround(p[1] * 1e9),
                                    std::llround(p[2] * 1e9)};
  };
  std::map<std::array<long long, 3>, MirrorImage> seen;
  struct Item {
    Vec3 p;
    double gain;
  };
  std::vector<Item> frontier{{s, 1.0}};
  seen[key(s)] = {0, 1.0};
  for (int depth = 1; depth <= room.max_order; ++depth) {
    std::vector<Item> next;
    for (const Item& it : frontier) {
      for (int wall = 0; wall < 6; ++wall) {
        const int axis = wall / 2;
        Item n = it;
        n.p[axis] = wall % 2 == 0 ? -it.p[axis] : 2.0 * room.dimensions[axis] - it.p[axis];
        n.gain *= room.beta[wall];
        if (seen.emplace(key(n.p), MirrorImage{depth, n.gain}).second) next.push_back(n);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_CASE("Gaussian pulse derivatives") {
  const GaussianPulse g{300.0, 1.5e-3, 4e-3};
  for (double t : {0.0, 2e-3, 4e-3, 5.1e-3, 9e-3}) {
    const double h = 1e-7;
    CHECK(g.first(t) == doctest::Approx((g.value(t + h) - g.value(t - h)) / (2 * h)).epsilon(1e-6));
    CHECK(g.second(t) == doctest::Approx((g.first(t + h) - g.first(t - h)) / (2 * h)).epsilon(1e-6));
  }
  CHECK(g.value(4e-3) == 0.0);
  const double t = 4.6e-3;
  const double e = std::exp(-(t - 4e-3) * (t - 4e-3) / (2 * 1.5e-3 * 1.5e-3));
  CHECK(g.value(t) == doctest::Approx(e * std::sin(2 * std::numbers::pi * 300.0 * 0.6e-3)));
}

TEST_CASE("plane-wave pulses solve the wave equation") {
  PlaneWavePulseSpec spec;
  spec.pulses = {{0.3, 1.0, {500.0, 1e-3, 5e-3}}, {2.0, -0.5, {900.0, 0.7e-3, 9e-3}}};
  const Medium m;
  const PlaneWavePulseField f(spec, m);
  const CollocationBatch pts = sample_lhs(Box3{{-0.5, -0.5, 0.0}, {0.5, 0.5, 0.02}}, 1000, 1);
  const Eigen::VectorXd r = pde_residual(f, m, pts.points);
  double scale = 0.0;
  for (const auto& p : pts.points) scale = std::max(scale, std::abs(f.query(p).hdiag[0]));
  CHECK(scale > 1.0);
  CHECK(r.cwiseAbs().maxCoeff() < 1e-9 * scale);

  // Value is the delayed pulse sum.
  const SpaceTime x{0.1, -0.2, 6e-3};
  double expected = 0.0;
  for (const auto& p : spec.pulses) {
    const double proj = x[0] * std::cos(p.direction) + x[1] * std::sin(p.direction);
    expected += p.amplitude * p.waveform.value(x[2] - proj / m.c);
  }
  CHECK(f.query(x).value == doctest::Approx(expected).epsilon(1e-13));
  // Spatial gradient against finite differences.
  const double h = 1e-6;
  for (int a = 0; a < 2; ++a) {
    SpaceTime xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    CHECK(f.query(x).grad[a] ==
          doctest::Approx((f.query(xp).value - f.query(xm).value) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("pulse spec validation") {
  PlaneWavePulseSpec spec;
  CHECK_THROWS_AS(spec.validate(), ArgumentError);
  spec.pulses = {{7.0, 1.0, {}}};
  CHECK_THROWS_AS(spec.validate(), ArgumentError);
  spec.pulses = {{1.0, 1.0, {100.0, 0.0, 0.0}}};
  CHECK_THROWS_AS(spec.validate(), ArgumentError);
}

TEST_CASE("image sources agree with explicit mirroring") {
  RoomSpec room;
  room.dimensions = {4.0, 3.0, 2.5};
  room.beta = {0.9, 0.8, 0.7, 0.6, 0.5, 0.4};
  room.max_order = 3;
  const Vec3 s{1.1, 0.7, 1.3};
  const Vec3 r{2.9, 2.2, 1.0};
  const auto images = image_sources(room, s, r);
  const auto ref = mirror_images(room, s);
  CHECK(images.size() == 63);
  CHECK(ref.size() == 63);
  for (const auto& img : images) {
    const std::array<long long, 3> k{std::llround(img.position[0] * 1e9),
                                     std::llround(img.position[1] * 1e9),
                                     std::llround(img.position[2] * 1e9)};
    const auto it = ref.find(k);
    REQUIRE(it != ref.end());
    CHECK(img.order == it->second.order);
    CHECK(img.gain == doctest::Approx(it->second.gain).epsilon(1e-14));
    const double d = std::hypot(img.position[0] - r[0], img.position[1] - r[1], img.position[2] - r[2]);
    CHECK(img.distance == doctest::Approx(d));
  }
}

TEST_CASE("direct path arrives at d / c with 1 / (4 pi d) amplitude") {
  RoomSpec room;
  room.dimensions = {10.0, 10.0, 10.0};
  room.max_order = 0;
  const Medium m;
  const double fs = 8000.0;
  const double d = m.c * 40.0 / fs;  // exactly 40 samples
  const Vec3 s{2.0, 2.0, 2.0};
  const Vec3 r{2.0 + d, 2.0, 2.0};
  const Eigen::VectorXd h = image_source_rir(room, SourceSpec{s, {1.0}}, r, fs, 0.02, m);
  Eigen::Index peak = 0;
  h.cwiseAbs().maxCoeff(&peak);
  CHECK(peak == 40);
  CHECK(h(40) == doctest::Approx(1.0 / (4 * std::numbers::pi * d)).epsilon(1e-12));
  CHECK(h.cwiseAbs().sum() == doctest::Approx(std::abs(h(40))).epsilon(1e-12));

  // A longer waveform is convolved.
  const Eigen::VectorXd y = image_source_rir(room, SourceSpec{s, {1.0, -2.0, 0.5}}, r, fs, 0.02, m);
  CHECK(y(41) == doctest::Approx(-2.0 * h(40)));
  CHECK(y(42) == doctest::Approx(0.5 * h(40)));
}

TEST_CASE("room and source validation") {
  RoomSpec room;
  room.beta[2] = 1.5;
  CHECK_THROWS_AS(room.validate(), ArgumentError);
  room = RoomSpec{};
  CHECK_THROWS_AS(image_sources(room, {-1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}), ArgumentError);
  CHECK_THROWS_AS(image_source_rir(room, SourceSpec{{1.0, 1.0, 1.0}, {1.0}}, {1.0, 1.0, 1.0}, 8000.0,
                                   0.1, Medium{}),
                  ArgumentError);
}

TEST_CASE("plane-wave velocity is p / (rho c) along the propagation direction") {
  const Medium m;
  const double dir = 0.9;
  PlaneWavePulseSpec spec;
  spec.pulses = {{dir, 2.0, {400.0, 1e-3, 6e-3}}};
  const PlaneWavePulseField f(spec, m);
  std::vector<double> times;
  for (int n = 0; n < 2000; ++n) times.push_back(n * 1e-5);
  const Vec2 pos{0.2, -0.1};
  const auto u = particle_velocity(f, m, pos, times);
  for (std::size_t n = 0; n < times.size(); n += 50) {
    const double p = f.query({pos[0], pos[1], times[n]}).value;
    CHECK(u[n][0] == doctest::Approx(p * std::cos(dir) / (m.rho * m.c)).epsilon(1e-3).scale(1e-4));
    CHECK(u[n][1] == doctest::Approx(p * std::sin(dir) / (m.rho * m.c)).epsilon(1e-3).scale(1e-4));
  }
  const Vec2 i = intensity(3.0, {0.5, -1.0});
  CHECK(i[0] == 1.5);
  CHECK(i[1] == -3.0);
  times[5] += 3e-6;
  CHECK_THROWS_AS(particle_velocity(f, m, pos, times), ArgumentError);
}
