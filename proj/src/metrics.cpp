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

#include "wavefield/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wavefield/errors.hpp"

namespace wavefield::metrics {
namespace {

void check_pair(std::span<const double> a, std::span<const double> b, std::size_t min_size) {
  if (a.size() != b.size()) throw ArgumentError("signals differ in length");
  if (a.size() < min_size) {
    throw ArgumentError("signals need at least " + std::to_string(min_size) + " samples");
  }
}

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

double to_db(double ratio, double factor) {
  if (!(ratio > 0.0)) return kDbFloor;
  return std::max(kDbFloor, factor * std::log10(ratio));
}

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

std::span<const double> column(const FieldGrid& g, Eigen::Index m) {
  return {g.pressure.col(m).data(), static_cast<std::size_t>(g.samples())};
}

}  // namespace

double pearson(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b, 2);
  if (is_constant(a) || is_constant(b)) throw NumericError("correlation is undefined for a constant signal");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) throw NumericError("correlation is undefined for a constant signal");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double rmse_db(std::span<const double> truth, std::span<const double> est, bool normalized) {
  check_pair(truth, est, 1);
  double se = 0.0, sp = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    se += (truth[i] - est[i]) * (truth[i] - est[i]);
    sp += truth[i] * truth[i];
  }
  if (normalized) {
    if (!(sp > 0.0)) throw ArgumentError("normalized RMSE needs a truth signal with energy");
    return to_db(std::sqrt(se / sp), 10.0);
  }
  return to_db(std::sqrt(se / static_cast<double>(truth.size())), 10.0);
}

double nmse_db(std::span<const double> truth, std::span<const double> est) {
  check_pair(truth, est, 1);
  double se = 0.0, sp = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    se += (truth[i] - est[i]) * (truth[i] - est[i]);
    sp += truth[i] * truth[i];
  }
  if (!(sp > 0.0)) throw ArgumentError("NMSE needs a truth signal with energy");
  return to_db(se / sp, 10.0);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b, 2);
  const std::vector<double> ra = ranks(a), rb = ranks(b);
  return pearson(ra, rb);
}

void check_aligned(const FieldGrid& truth, const FieldGrid& est) {
  if (truth.positions.size() != est.positions.size() || truth.samples() != est.samples() ||
      truth.pressure.cols() != est.pressure.cols()) {
    throw ArgumentError("grids differ in shape");
  }
  if (std::abs(truth.fs - est.fs) > 1e-9 * truth.fs || std::abs(truth.t0 - est.t0) > 0.5 / truth.fs) {
    throw ArgumentError("grids differ in time axis");
  }
  for (std::size_t m = 0; m < truth.positions.size(); ++m) {
    for (int a = 0; a < 3; ++a) {
      if (std::abs(truth.positions[m][a] - est.positions[m][a]) > 1e-9) {
        throw ArgumentError("grids differ at position " + std::to_string(m));
      }
    }
  }
}

ReconReport global_metrics(const FieldGrid& truth, const FieldGrid& est) {
  check_aligned(truth, est);
  ReconReport r;
  const std::span<const double> t(truth.pressure.data(), static_cast<std::size_t>(truth.pressure.size()));
  const std::span<const double> e(est.pressure.data(), static_cast<std::size_t>(est.pressure.size()));
  r.correlation = pearson(t, e);
  r.nmse_db = nmse_db(t, e);
  return r;
}

std::vector<WindowRow> snapshot_metrics(const FieldGrid& truth, const FieldGrid& est, double window,
                                        double hop) {
  check_aligned(truth, est);
  if (!(window > 0.0) || !(hop > 0.0)) throw ArgumentError("window and hop must be positive");
  const Eigen::Index n = truth.samples();
  const Eigen::Index w = std::clamp<Eigen::Index>(std::llround(window * truth.fs), 1, n);
  const double hop_samples = hop * truth.fs;
  const Eigen::Index h = std::isfinite(hop_samples)
                             ? std::max<Eigen::Index>(1, std::llround(hop_samples))
                             : n;
  std::vector<WindowRow> rows;
  std::vector<double> a, b;
  for (Eigen::Index start = 0; start + w <= n; start += h) {
    a.clear();
    b.clear();
    for (Eigen::Index m = 0; m < truth.pressure.cols(); ++m) {
      for (Eigen::Index i = start; i < start + w; ++i) {
        a.push_back(truth.pressure(i, m));
        b.push_back(est.pressure(i, m));
      }
    }
    WindowRow row;
    row.center_time = truth.time(start) + 0.5 * static_cast<double>(w - 1) / truth.fs;
    row.correlation = std::numeric_limits<double>::quiet_NaN();
    row.nmse_db = std::numeric_limits<double>::quiet_NaN();
    if (a.size() >= 2 && !is_constant(a) && !is_constant(b)) row.correlation = pearson(a, b);
    if (std::any_of(a.begin(), a.end(), [](double v) { return v != 0.0; })) row.nmse_db = nmse_db(a, b);
    rows.push_back(row);
  }
  return rows;
}

std::vector<PositionRow> distance_study(const FieldGrid& truth, const FieldGrid& est,
                                        const std::vector<Vec3>& training_positions,
                                        const AxisSpec& axis) {
  check_aligned(truth, est);
  if (axis.sort_axis < 0 || axis.sort_axis > 2 || axis.line_axis > 2) {
    throw ArgumentError("axis indices must be 0, 1 or 2");
  }
  std::vector<PositionRow> rows;
  for (std::size_t m = 0; m < truth.positions.size(); ++m) {
    const Vec3& p = truth.positions[m];
    if (axis.line_axis >= 0 && std::abs(p[axis.line_axis] - axis.line_value) > axis.tolerance) continue;
    PositionRow row;
    row.position = p;
    row.distance = std::numeric_limits<double>::infinity();
    for (const auto& q : training_positions) row.distance = std::min(row.distance, planar_distance(p, q));
    const auto t = column(truth, static_cast<Eigen::Index>(m));
    const auto e = column(est, static_cast<Eigen::Index>(m));
    row.correlation = std::numeric_limits<double>::quiet_NaN();
    if (t.size() >= 2 && !is_constant(t) && !is_constant(e)) row.correlation = pearson(t, e);
    row.rmse_db = std::any_of(t.begin(), t.end(), [](double v) { return v != 0.0; })
                      ? rmse_db(t, e, true)
                      : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(), [&](const PositionRow& x, const PositionRow& y) {
    return x.position[axis.sort_axis] < y.position[axis.sort_axis];
  });
  return rows;
}

std::vector<DistanceBin> bin_by_distance(const std::vector<PositionRow>& rows, double start,
                                         double width) {
  if (!(width > 0.0)) throw ArgumentError("bin width must be positive");
  std::vector<DistanceBin> bins;
  for (const auto& r : rows) {
    if (!(r.distance >= start) || !std::isfinite(r.correlation)) continue;
    const auto k = static_cast<std::size_t>((r.distance - start) / width);
    if (bins.size() <= k) {
      const std::size_t old = bins.size();
      bins.resize(k + 1);
      for (std::size_t i = old; i <= k; ++i) {
        bins[i].lo = start + width * static_cast<double>(i);
        bins[i].hi = bins[i].lo + width;
      }
    }
    bins[k].count += 1;
    bins[k].mean_correlation += r.correlation;
  }
  std::vector<DistanceBin> out;
  for (auto& b : bins) {
    if (b.count == 0) continue;
    b.mean_correlation /= static_cast<double>(b.count);
    out.push_back(b);
  }
  return out;
}

}  // namespace wavefield::metrics
