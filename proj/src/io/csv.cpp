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

#include "wavefield/io/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wavefield/errors.hpp"

namespace wavefield::io {
namespace {

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& header) : path_(path), out_(path) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
    out_ << header << '\n';
  }

  template <typename... Ts>
  void row(const Ts&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(fields), first = false), ...);
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing " + path_.string());
  }

 private:
  static std::string cell(double v) { return format_real(v); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  template <typename I>
    requires std::is_integral_v<I>
  static std::string cell(I v) {
    return std::to_string(v);
  }

  std::filesystem::path path_;
  std::ofstream out_;
};

double parse_real(const std::string& s) {
  if (s == "nan") return std::nan("");
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw FormatError("not a number: '" + s + "'");
  }
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_train_log(const std::vector<TrainLogRow>& rows, const std::filesystem::path& path) {
  CsvFile f(path, "iteration,loss_data,loss_pde,loss_total,validation_mae,eps_data,eps_pde,wall_seconds");
  for (const auto& r : rows) {
    f.row(r.iteration, r.loss_data, r.loss_pde, r.loss_total, r.validation_mae, r.eps_data, r.eps_pde,
          r.wall_seconds);
  }
  f.close();
}

std::vector<TrainLogRow> read_train_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("iteration,", 0) != 0) throw FormatError(path.string() + ": not a training log");
  std::vector<TrainLogRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) throw FormatError(path.string() + ": expected 8 columns");
    TrainLogRow r;
    r.iteration = std::stoll(cells[0]);
    r.loss_data = parse_real(cells[1]);
    r.loss_pde = parse_real(cells[2]);
    r.loss_total = parse_real(cells[3]);
    r.validation_mae = parse_real(cells[4]);
    r.eps_data = parse_real(cells[5]);
    r.eps_pde = parse_real(cells[6]);
    r.wall_seconds = parse_real(cells[7]);
    rows.push_back(r);
  }
  return rows;
}

void write_snapshot_csv(const metrics::ReconReport& report, const std::filesystem::path& path) {
  CsvFile f(path, "method,config_hash,window_center_s,correlation,nmse_db");
  for (const auto& w : report.windows) f.row(report.method, report.config_hash, w.center_time, w.correlation, w.nmse_db);
  f.close();
}

void write_positions_csv(const metrics::ReconReport& report, const std::filesystem::path& path) {
  CsvFile f(path, "method,config_hash,x,y,z,distance_m,correlation,rmse_db");
  for (const auto& p : report.positions) {
    f.row(report.method, report.config_hash, p.position[0], p.position[1], p.position[2], p.distance,
          p.correlation, p.rmse_db);
  }
  f.close();
}

void write_distance_bins_csv(const std::string& method, const std::vector<metrics::DistanceBin>& bins,
                             const std::filesystem::path& path) {
  CsvFile f(path, "method,bin_lo_m,bin_hi_m,count,mean_correlation");
  for (const auto& b : bins) f.row(method, b.lo, b.hi, b.count, b.mean_correlation);
  f.close();
}

void write_summary_csv(const std::vector<metrics::ReconReport>& reports,
                       const std::filesystem::path& path) {
  CsvFile f(path, "method,config_hash,correlation,nmse_db");
  for (const auto& r : reports) f.row(r.method, r.config_hash, r.correlation, r.nmse_db);
  f.close();
}

void write_td_coefficients(const baselines::SphericalDictionary& dict, const Eigen::MatrixXd& alpha,
                           const std::filesystem::path& path) {
  CsvFile f(path, "source,tap,value");
  for (Eigen::Index l = 0; l < alpha.cols(); ++l) {
    for (Eigen::Index i = 0; i < alpha.rows(); ++i) {
      if (alpha(i, l) != 0.0) f.row(l, static_cast<std::int64_t>(i) - dict.offset(), alpha(i, l));
    }
  }
  f.close();
}

void write_pw_coefficients(const baselines::PwSolution& solution, const std::filesystem::path& path) {
  CsvFile f(path, "frequency_hz,direction_rad,real,imag");
  for (Eigen::Index b = 0; b < solution.coefficients.rows(); ++b) {
    for (Eigen::Index l = 0; l < solution.coefficients.cols(); ++l) {
      const auto v = solution.coefficients(b, l);
      f.row(solution.frequencies[static_cast<std::size_t>(b)], solution.directions[static_cast<std::size_t>(l)],
            v.real(), v.imag());
    }
  }
  f.close();
}

void write_lambda_sweep(const std::vector<baselines::LambdaSweepRow>& rows,
                        const std::filesystem::path& path) {
  CsvFile f(path, "lambda,residual_norm,solution_norm");
  for (const auto& r : rows) f.row(r.lambda, r.residual_norm, r.solution_norm);
  f.close();
}

void write_grid_csv(const FieldGrid& grid, const std::filesystem::path& path) {
  CsvFile f(path, "position,x,y,z,time_s,pressure");
  for (std::size_t m = 0; m < grid.positions.size(); ++m) {
    const auto& p = grid.positions[m];
    for (Eigen::Index n = 0; n < grid.samples(); ++n) {
      f.row(m, p[0], p[1], p[2], grid.time(n), grid.pressure(n, static_cast<Eigen::Index>(m)));
    }
  }
  f.close();
}

}  // namespace wavefield::io
