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
#include <optional>

#include "wavefield/network.hpp"

namespace wavefield {

// Optimizer moments saved alongside the parameters so that training resumes
// exactly where it stopped.
struct OptimizerMoments {
  ad::ParamStore first;
  ad::ParamStore second;
  std::int64_t step = 0;
};

struct Checkpoint {
  NetConfig config;
  NetParams params;
  std::int64_t iteration = 0;
  std::optional<OptimizerMoments> moments;
};

// Binary layout (all integers and reals little-endian):
//   "WFPN" | u32 version (1)
//   u8 kind (0 mlp, 1 mmlp) | u8 sigma_output | u16 reserved
//   u32 depth | u32 width | f64 omega0 | f64 lo[3] | f64 hi[3] | f64 pressure_scale
//   i64 iteration | u8 has_moments | i64 moment_step
//   tensor section: params, then (if has_moments) first and second moments
//     u32 count, then per tensor: u32 name_len, name, u32 rows, u32 cols,
//     rows*cols f64 in column-major order
//   u32 CRC-32 of all preceding bytes
void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_checkpoint(const Checkpoint& checkpoint);
Checkpoint decode_checkpoint(std::vector<std::uint8_t> bytes);

}  // namespace wavefield
