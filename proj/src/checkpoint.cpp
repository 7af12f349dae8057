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

#include "wavefield/checkpoint.hpp"

#include "wavefield/binary_io.hpp"
#include "wavefield/errors.hpp"

namespace wavefield {
namespace {

constexpr char kMagic[] = "WFPN";
constexpr std::uint32_t kVersion = 1;

void put_store(io::ByteWriter& w, const ad::ParamStore& store) {
  w.put_u32(static_cast<std::uint32_t>(store.size()));
  for (std::size_t i = 0; i < store.size(); ++i) {
    const ad::ParamId id{i};
    const auto& t = store[id];
    w.put_string(store.name(id));
    w.put_u32(static_cast<std::uint32_t>(t.rows()));
    w.put_u32(static_cast<std::uint32_t>(t.cols()));
    for (Eigen::Index k = 0; k < t.size(); ++k) w.put_f64(t.data()[k]);
  }
}

ad::ParamStore get_store(io::ByteReader& r) {
  ad::ParamStore store;
  const std::uint32_t count = r.get_u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name = r.get_string();
    const std::uint32_t rows = r.get_u32();
    const std::uint32_t cols = r.get_u32();
    if (static_cast<std::uint64_t>(rows) * cols * 8 > r.remaining()) {
      throw FormatError("tensor '" + name + "' larger than remaining payload");
    }
    Eigen::MatrixXd t(rows, cols);
    for (Eigen::Index k = 0; k < t.size(); ++k) t.data()[k] = r.get_f64();
    store.add(std::move(name), std::move(t));
  }
  return store;
}

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const Checkpoint& checkpoint) {
  const NetConfig& c = checkpoint.config;
  io::ByteWriter w;
  w.put_magic(kMagic);
  w.put_u32(kVersion);
  w.put_u8(c.kind == NetKind::kModifiedMlp ? 1 : 0);
  w.put_u8(c.sigma_output ? 1 : 0);
  w.put_u16(0);
  w.put_u32(static_cast<std::uint32_t>(c.depth));
  w.put_u32(static_cast<std::uint32_t>(c.width));
  w.put_f64(c.omega0);
  for (double v : c.input_bounds.lo) w.put_f64(v);
  for (double v : c.input_bounds.hi) w.put_f64(v);
  w.put_f64(c.pressure_scale);
  w.put_i64(checkpoint.iteration);
  w.put_u8(checkpoint.moments ? 1 : 0);
  w.put_i64(checkpoint.moments ? checkpoint.moments->step : 0);
  put_store(w, checkpoint.params);
  if (checkpoint.moments) {
    put_store(w, checkpoint.moments->first);
    put_store(w, checkpoint.moments->second);
  }
  w.put_checksum();
  return w.bytes();
}

Checkpoint decode_checkpoint(std::vector<std::uint8_t> bytes) {
  io::ByteReader r(std::move(bytes));
  r.verify_checksum();
  r.expect_magic(kMagic);
  const std::uint32_t version = r.get_u32();
  if (version != kVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint ck;
  const std::uint8_t kind = r.get_u8();
  if (kind > 1) throw FormatError("unknown network kind code " + std::to_string(kind));
  ck.config.kind = kind == 1 ? NetKind::kModifiedMlp : NetKind::kMlp;
  ck.config.sigma_output = r.get_u8() != 0;
  r.get_u16();
  ck.config.depth = static_cast<int>(r.get_u32());
  ck.config.width = static_cast<int>(r.get_u32());
  ck.config.omega0 = r.get_f64();
  for (double& v : ck.config.input_bounds.lo) v = r.get_f64();
  for (double& v : ck.config.input_bounds.hi) v = r.get_f64();
  ck.config.pressure_scale = r.get_f64();
  ck.iteration = r.get_i64();
  const bool has_moments = r.get_u8() != 0;
  const std::int64_t step = r.get_i64();
  ck.params = get_store(r);
  if (has_moments) {
    OptimizerMoments m;
    m.step = step;
    m.first = get_store(r);
    m.second = get_store(r);
    if (!m.first.same_layout(ck.params) || !m.second.same_layout(ck.params)) {
      throw FormatError("optimizer moments do not match parameter layout");
    }
    ck.moments = std::move(m);
  }
  r.expect_end();
  try {
    ck.config.validate();
  } catch (const ArgumentError& e) {
    throw FormatError(std::string("invalid network config in checkpoint: ") + e.what());
  }
  return ck;
}

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
  io::write_file(path, encode_checkpoint(checkpoint));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(io::read_file(path));
}

}  // namespace wavefield
