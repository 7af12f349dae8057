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
#include <vector>

#include "wavefield/acoustics/field_grid.hpp"

namespace wavefield::io {

// Binary layout (little-endian):
//   "WFGD" | u32 version (1) | f64 fs | f64 t0 | u64 positions M | u64 samples N
//   M x (f64 x, f64 y, f64 z) in meters
//   N x M f64 pressure, time-major: sample n of every position before sample n+1
//   u32 CRC-32 of all preceding bytes
void write_grid(const FieldGrid& grid, const std::filesystem::path& path);
FieldGrid read_grid(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_grid(const FieldGrid& grid);
FieldGrid decode_grid(std::vector<std::uint8_t> bytes);

}  // namespace wavefield::io
