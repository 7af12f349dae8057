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

#include "wavefield/io/grid_file.hpp"

#include <string>

#include "wavefield/binary_io.hpp"
#include "wavefield/errors.hpp"

namespace wavefield::io {
namespace {

constexpr std::uint32_t kVersion = 1;

}  // namespace

std::vector<std::uint8_t> encode_grid(const FieldGrid& grid) {
  grid.validate();
  ByteWriter w;
  w.put_magic("WFGD");
  w.put_u32(kVersion);
  w.put_f64(grid.fs);
  w.put_f64(grid.t0);
  w.put_u64(grid.positions.size());
  w.put_u64(static_cast<std::uint64_t>(grid.samples()));
  for (const auto& p : grid.positions) {
    for (double v : p) w.put_f64(v);
  }
  for (Eigen::Index n = 0; n < grid.samples(); ++n) {
    for (Eigen::Index m = 0; m < grid.pressure.cols(); ++m) w.put_f64(grid.pressure(n, m));
  }
  w.put_checksum();
  return w.bytes();
}

FieldGrid decode_grid(std::vector<std::uint8_t> bytes) {
  ByteReader r(std::move(bytes));
  r.verify_checksum();
  r.expect_magic("WFGD");
  const std::uint32_t version = r.get_u32();
  if (version != kVersion) throw FormatError("unsupported grid file version " + std::to_string(version));
  FieldGrid g;
  g.fs = r.get_f64();
  g.t0 = r.get_f64();
  const std::uint64_t positions = r.get_u64();
  const std::uint64_t samples = r.get_u64();
  const std::uint64_t payload = r.remaining() / 8;
  if (positions > payload / 3 || (positions > 0 && samples > (payload - 3 * positions) / positions) ||
      r.remaining() != 8 * (3 * positions + samples * positions)) {
    throw FormatError("grid dimensions " + std::to_string(samples) + " x " + std::to_string(positions) +
                      " do not match the payload");
  }
  g.positions.resize(positions);
  for (auto& p : g.positions) {
    for (double& v : p) v = r.get_f64();
  }
  g.pressure.resize(static_cast<Eigen::Index>(samples), static_cast<Eigen::Index>(positions));
  for (Eigen::Index n = 0; n < g.pressure.rows(); ++n) {
    for (Eigen::Index m = 0; m < g.pressure.cols(); ++m) g.pressure(n, m) = r.get_f64();
  }
  r.expect_end();
  try {
    g.validate();
  } catch (const ArgumentError& e) {
    throw FormatError(std::string("invalid grid file: ") + e.what());
  }
  return g;
}

void write_grid(const FieldGrid& grid, const std::filesystem::path& path) {
  write_file(path, encode_grid(grid));
}

FieldGrid read_grid(const std::filesystem::path& path) {
  try {
    return decode_grid(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace wavefield::io
