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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wavefield/acoustics/oracle.hpp"
#include "wavefield/baselines/baselines.hpp"
#include "wavefield/medium.hpp"
#include "wavefield/metrics.hpp"
#include "wavefield/network.hpp"
#include "wavefield/training.hpp"

namespace wavefield::io {

enum class SynthKind { kPlaneWave, kImageSource };

// Ground-truth generation on a rectangular receiver grid, plus the training
// subset (a strided sub-lattice, or `train_count` random receivers when > 0).
struct SynthConfig {
  SynthKind kind = SynthKind::kPlaneWave;
  int nx = 30;
  int ny = 30;
  double x0 = -0.4;
  double y0 = -0.4;
  double dx = 0.8 / 29.0;
  double dy = 0.8 / 29.0;
  double z = 0.0;
  double fs = 8000.0;
  double t0 = 0.0;
  std::int64_t samples = 400;
  int train_stride = 3;
  int train_offset = 1;
  std::size_t train_count = 0;
  std::vector<PlaneWavePulse> pulses = default_pulses();
  RoomSpec room{};
  Vec3 source_position{1.5, 1.2, 1.1};
  // Source excitation; a unit impulse when center_frequency is 0.
  GaussianPulse source_pulse{0.0, 1e-3, 0.0};

  static std::vector<PlaneWavePulse> default_pulses();
  void validate() const;
};

enum class BaselineMethod { kTdLaplace, kPwRls };

struct BaselineConfig {
  BaselineMethod method = BaselineMethod::kPwRls;
  baselines::SparseSolverConfig solver{};
  std::size_t directions = 64;
  double f_lo = 30.0;
  double f_hi = 1000.0;
  std::size_t sources = 512;
  int filter_len = baselines::kDefaultDelayTaps;
  std::vector<double> sweep_lambdas;  // nonempty: also write an L-curve table

  void validate() const;
};

struct EvaluateConfig {
  double window = metrics::kSnapshotWindow;
  double hop = 0.5 * metrics::kSnapshotWindow;
  metrics::AxisSpec axis{};
  double bin_width = 0.05;  // m, distance bins of the extrapolation table

  void validate() const;
};

// One document drives every command. Unknown keys are rejected.
struct RunConfig {
  std::uint64_t seed = 1;
  Medium medium{};
  SynthConfig synth{};
  NetConfig network{};
  TrainConfig train{};
  BaselineConfig baseline{};
  EvaluateConfig evaluate{};

  void validate() const;
};

RunConfig default_run_config();

// JSON text <-> config. Missing keys keep their defaults; unknown keys and
// wrongly typed values throw ArgumentError naming the key path.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);
std::string dump_run_config(const RunConfig& config);

// Applies "dotted.key=value" assignments (value parsed as JSON, falling back
// to a plain string) and re-validates.
RunConfig apply_overrides(const RunConfig& config, const std::vector<std::string>& assignments);

// FNV-1a (64 bit) of the canonical dump, as 16 hex digits.
std::string config_hash(const RunConfig& config);

std::string to_string(BaselineMethod method);
BaselineMethod baseline_method_from_string(const std::string& name);
std::string to_string(SynthKind kind);
SynthKind synth_kind_from_string(const std::string& name);

}  // namespace wavefield::io
