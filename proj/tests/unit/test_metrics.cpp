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
#include <limits>
#include <vector>

#include <doctest.h>

#include "wavefield/errors.hpp"
#include "wavefield/metrics.hpp"

using namespace wavefield;
using namespace wavefield::metrics;

namespace {

using V = std::vector<double>;

FieldGrid line_grid(int count, Eigen::Index samples, double fs) {
  FieldGrid g;
  for (int i = 0; i < count; ++i) g.positions.push_back({0.1 * i, 0.0, 0.0});
  g.fs = fs;
  g.pressure = Eigen::MatrixXd::Zero(samples, count);
  return g;
}

}  // namespace

TEST_CASE("Pearson correlation") {
  CHECK(pearson(V{1, 2, 3}, V{2, 4, 7}) == doctest::Approx(5.0 / std::sqrt(2.0 * 114.0 / 9.0)));
  CHECK(pearson(V{1, 2, 3}, V{-3, -2, -1}) == doctest::Approx(1.0));
  CHECK(pearson(V{1, 2, 3}, V{3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(pearson(V{1, 2, 3, 4}, V{10, 20, 30, 40}) == doctest::Approx(pearson(V{1, 2, 3, 4}, V{1, 2, 3, 4})));
  CHECK_THROWS_AS(pearson(V{1}, V{1}), ArgumentError);
  CHECK_THROWS_AS(pearson(V{1, 2}, V{1, 2, 3}), ArgumentError);
  CHECK_THROWS_AS(pearson(V{1, 1, 1}, V{1, 2, 3}), NumericError);
}

TEST_CASE("error in decibels") {
  CHECK(rmse_db(V{1, -1}, V{0, 0}) == doctest::Approx(0.0));
  CHECK(rmse_db(V{0, 0}, V{0.1, -0.1}) == doctest::Approx(-10.0));
  CHECK(rmse_db(V{2, 2}, V{1, 1}, true) == doctest::Approx(10.0 * std::log10(0.5)));
  CHECK(rmse_db(V{1, 2}, V{1, 2}) == kDbFloor);
  CHECK(nmse_db(V{3, 4}, V{3, 3}) == doctest::Approx(10.0 * std::log10(1.0 / 25.0)));
  CHECK(nmse_db(V{3, 4}, V{3, 4}) == kDbFloor);
  CHECK_THROWS_AS(nmse_db(V{1, 2}, V{1}), ArgumentError);
}

TEST_CASE("Spearman correlation with ties") {
  CHECK(spearman(V{1, 2, 2, 3}, V{1, 3, 2, 4}) == doctest::Approx(4.5 / std::sqrt(22.5)));
  CHECK(spearman(V{1, 5, 9, 100}, V{-1, -2, -30, -31}) == doctest::Approx(-1.0));
}

TEST_CASE("global metrics over a grid") {
  FieldGrid t = line_grid(3, 4, 100.0);
  t.pressure << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12;
  FieldGrid e = t;
  e.pressure(0, 0) += 1.0;
  const ReconReport r = global_metrics(t, e);
  CHECK(r.nmse_db == doctest::Approx(10.0 * std::log10(1.0 / 650.0)));
  CHECK(r.correlation < 1.0);
  CHECK(r.correlation > 0.99);

  FieldGrid moved = e;
  moved.positions[1][1] = 0.5;
  CHECK_THROWS_AS(check_aligned(t, moved), ArgumentError);
  FieldGrid shorter = e;
  shorter.pressure.conservativeResize(3, 3);
  CHECK_THROWS_AS(check_aligned(t, shorter), ArgumentError);
  FieldGrid later = e;
  later.t0 = 0.5;
  CHECK_THROWS_AS(check_aligned(t, later), ArgumentError);
}

TEST_CASE("snapshot windows") {
  FieldGrid t = line_grid(2, 100, 1000.0);
  t.t0 = 0.2;
  for (Eigen::Index n = 50; n < 100; ++n) {
    t.pressure(n, 0) = std::sin(0.3 * n);
    t.pressure(n, 1) = std::cos(0.2 * n);
  }
  FieldGrid e = t;
  e.pressure *= 0.5;
  const auto rows = snapshot_metrics(t, e, 0.010, 0.005);
  REQUIRE(rows.size() == 19);
  CHECK(rows[0].center_time == doctest::Approx(0.2 + 4.5e-3));
  CHECK(rows[1].center_time - rows[0].center_time == doctest::Approx(5e-3));
  // Quiet lead-in: correlation undefined, NMSE undefined.
  CHECK(std::isnan(rows[0].correlation));
  CHECK(std::isnan(rows[0].nmse_db));
  CHECK(rows[12].correlation == doctest::Approx(1.0));
  CHECK(rows[12].nmse_db == doctest::Approx(10.0 * std::log10(0.25)));

  const auto one = snapshot_metrics(t, e, 0.1, std::numeric_limits<double>::infinity());
  REQUIRE(one.size() == 1);
  CHECK(one[0].correlation == doctest::Approx(1.0));
  CHECK_THROWS_AS(snapshot_metrics(t, e, 0.0, 0.1), ArgumentError);
}

TEST_CASE("per-position study and distance bins") {
  FieldGrid t;
  t.fs = 100.0;
  t.positions = {{0.3, 0.0, 0.0}, {0.1, 0.0, 0.0}, {0.2, 0.0, 0.0}, {0.2, 0.5, 0.0}};
  t.pressure.resize(16, 4);
  for (Eigen::Index n = 0; n < 16; ++n) {
    for (Eigen::Index m = 0; m < 4; ++m) t.pressure(n, m) = std::sin(0.5 * n + m);
  }
  FieldGrid e = t;
  e.pressure.col(0) *= -1.0;
  e.pressure.col(2) *= 2.0;
  const std::vector<Vec3> training{{0.0, 0.0, 0.0}};
  AxisSpec axis;
  axis.line_axis = 1;
  axis.line_value = 0.0;
  const auto rows = distance_study(t, e, training, axis);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].position[0] == 0.1);
  CHECK(rows[1].position[0] == 0.2);
  CHECK(rows[2].position[0] == 0.3);
  CHECK(rows[0].distance == doctest::Approx(0.1));
  CHECK(rows[0].correlation == doctest::Approx(1.0));
  CHECK(rows[0].rmse_db == kDbFloor);
  CHECK(rows[1].correlation == doctest::Approx(1.0));
  CHECK(rows[1].rmse_db == doctest::Approx(0.0).scale(1.0));
  CHECK(rows[2].correlation == doctest::Approx(-1.0));
  CHECK(rows[2].rmse_db == doctest::Approx(10.0 * std::log10(2.0)));

  const auto all = distance_study(t, e, training);
  CHECK(all.size() == 4);

  const auto bins = bin_by_distance(rows, 0.05, 0.2);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].lo == doctest::Approx(0.05));
  CHECK(bins[0].count == 2);
  CHECK(bins[0].mean_correlation == doctest::Approx(1.0));
  CHECK(bins[1].count == 1);
  CHECK(bins[1].mean_correlation == doctest::Approx(-1.0));
  CHECK_THROWS_AS(bin_by_distance(rows, 0.0, 0.0), ArgumentError);
}
