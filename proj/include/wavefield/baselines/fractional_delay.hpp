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

#include <cstddef>
#include <vector>

namespace wavefield::baselines {

// Windowed-sinc fractional delay. taps[k] applies at sample index first + k.
struct FractionalDelayKernel {
  std::ptrdiff_t first = 0;
  std::vector<double> taps;
};

inline constexpr int kDefaultDelayTaps = 81;

// Hann-windowed sinc realizing a delay of `delay_samples` (any real value),
// normalized to unit sum. `taps` must be odd. An integer delay yields a unit
// impulse at that index.
FractionalDelayKernel fractional_delay(double delay_samples, int taps = kDefaultDelayTaps);

}  // namespace wavefield::baselines
