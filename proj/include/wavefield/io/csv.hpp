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

#include <filesystem>
#include <string>
#include <vector>

#include "wavefield/baselines/baselines.hpp"
#include "wavefield/metrics.hpp"
#include "wavefield/training.hpp"

namespace wavefield::io {

// CSV writers. Every file starts with one header line; reals use 17
// significant digits; undefined values are written as "nan".

// iteration,loss_data,loss_pde,loss_total,validation_mae,eps_data,eps_pde,wall_seconds
void write_train_log(const std::vector<TrainLogRow>& rows, const std::filesystem::path& path);
std::vector<TrainLogRow> read_train_log(const std::filesystem::path& path);

// method,config_hash,window_center_s,correlation,nmse_db
void write_snapshot_csv(const metrics::ReconReport& report, const std::filesystem::path& path);
// method,config_hash,x,y,z,distance_m,correlation,rmse_db
void write_positions_csv(const metrics::ReconReport& report, const std::filesystem::path& path);
// method,bin_lo_m,bin_hi_m,count,mean_correlation
void write_distance_bins_csv(const std::string& method, const std::vector<metrics::DistanceBin>& bins,
                             const std::filesystem::path& path);
// method,config_hash,correlation,nmse_db  (one row per report)
void write_summary_csv(const std::vector<metrics::ReconReport>& reports,
                       const std::filesystem::path& path);

// source,tap,value  (nonzero coefficients only; tap = coefficient index - offset)
void write_td_coefficients(const baselines::SphericalDictionary& dict, const Eigen::MatrixXd& alpha,
                           const std::filesystem::path& path);
// frequency_hz,direction_rad,real,imag
void write_pw_coefficients(const baselines::PwSolution& solution, const std::filesystem::path& path);
// lambda,residual_norm,solution_norm
void write_lambda_sweep(const std::vector<baselines::LambdaSweepRow>& rows,
                        const std::filesystem::path& path);
// position,x,y,z,time_s,pressure  (long format, one row per sample)
void write_grid_csv(const FieldGrid& grid, const std::filesystem::path& path);

std::string format_real(double v);

}  // namespace wavefield::io
