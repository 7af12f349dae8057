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

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "wavefield/acoustics/field_grid.hpp"

namespace wavefield::metrics {

inline constexpr double kDbFloor = -300.0;

// Pearson correlation cov(a, b) / (sigma_a sigma_b). Throws ArgumentError on
// length mismatch or fewer than two samples, NumericError when either signal
// is constant.
double pearson(std::span<const double> a, std::span<const double> b);

// 10 log10(sqrt(mean((truth - est)^2))). With `normalized`, the RMS error is
// divided by sqrt(mean(truth^2)) first. Results are clamped at kDbFloor.
double rmse_db(std::span<const double> truth, std::span<const double> est, bool normalized = false);

// 10 log10(sum (truth - est)^2 / sum truth^2), clamped at kDbFloor.
double nmse_db(std::span<const double> truth, std::span<const double> est);

// Spearman rank correlation (average ranks for ties).
double spearman(std::span<const double> a, std::span<const double> b);

struct WindowRow {
  double center_time = 0.0;  // s
  double correlation = 0.0;  // NaN when undefined (constant window)
  double nmse_db = 0.0;      // NaN when the truth window has no energy
};

struct PositionRow {
  Vec3 position{};
  double distance = 0.0;     // m, to the nearest training position in the (x, y) plane
  double correlation = 0.0;  // NaN when undefined
  double rmse_db = 0.0;      // normalized
};

struct ReconReport {
  std::string method;
  std::string config_hash;
  double correlation = 0.0;  // global, over all samples and positions
  double nmse_db = 0.0;
  std::vector<WindowRow> windows;
  std::vector<PositionRow> positions;
};

inline constexpr double kSnapshotWindow = 1.8e-3;

// Throws ArgumentError unless the grids share positions, rate, start time and
// length.
void check_aligned(const FieldGrid& truth, const FieldGrid& est);

// Global correlation and NMSE over the whole slab.
ReconReport global_metrics(const FieldGrid& truth, const FieldGrid& est);

// Metrics over successive time slabs of `window` seconds, started every `hop`
// seconds (an infinite hop yields one window). Window and hop are rounded to
// whole samples, at least one.
std::vector<WindowRow> snapshot_metrics(const FieldGrid& truth, const FieldGrid& est,
                                        double window = kSnapshotWindow,
                                        double hop = 0.5 * kSnapshotWindow);

// Selects and orders receivers for a per-RIR study. With `line_axis` >= 0,
// only positions whose coordinate on that axis is within `tolerance` of
// `line_value` are kept. Rows are sorted by the `sort_axis` coordinate.
struct AxisSpec {
  int sort_axis = 0;
  int line_axis = -1;
  double line_value = 0.0;
  double tolerance = 1e-6;
};

std::vector<PositionRow> distance_study(const FieldGrid& truth, const FieldGrid& est,
                                        const std::vector<Vec3>& training_positions,
                                        const AxisSpec& axis = {});

struct DistanceBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double mean_correlation = 0.0;
};

// Mean correlation of the rows in consecutive distance bins of `width`
// starting at `start`; empty bins and undefined correlations are skipped.
std::vector<DistanceBin> bin_by_distance(const std::vector<PositionRow>& rows, double start,
                                         double width);

}  // namespace wavefield::metrics
