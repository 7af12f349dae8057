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
#include <iosfwd>
#include <vector>

#include "wavefield/acoustics/field_grid.hpp"
#include "wavefield/io/run_config.hpp"

namespace wavefield::cli {

struct SynthResult {
  FieldGrid truth;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> heldout_indices;
};

// Ground truth on the configured grid and its training / held-out split.
SynthResult synthesize(const io::SynthConfig& config, const Medium& medium, std::uint64_t seed);

// Entry point of the `wavefield` tool. Returns 0 on success, 2 on usage
// errors and 1 on runtime errors; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wavefield::cli
