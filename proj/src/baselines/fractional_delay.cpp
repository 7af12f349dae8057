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

#include "wavefield/baselines/fractional_delay.hpp"

#include <cmath>
#include <numbers>

#include "wavefield/errors.hpp"

namespace wavefield::baselines {
namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

FractionalDelayKernel fractional_delay(double delay_samples, int taps) {
  if (taps < 1 || taps % 2 == 0) throw ArgumentError("fractional delay needs an odd tap count");
  if (!std::isfinite(delay_samples)) throw ArgumentError("fractional delay must be finite");
  const int half = taps / 2;
  const auto center = static_cast<std::ptrdiff_t>(std::llround(delay_samples));
  FractionalDelayKernel k;
  k.first = center - half;
  k.taps.resize(static_cast<std::size_t>(taps));
  double sum = 0.0;
  for (int i = 0; i < taps; ++i) {
    const double x = static_cast<double>(k.first + i) - delay_samples;
    const double window = 0.5 * (1.0 + std::cos(std::numbers::pi * x / (half + 1)));
    k.taps[static_cast<std::size_t>(i)] = sinc(x) * window;
    sum += k.taps[static_cast<std::size_t>(i)];
  }
  for (double& t : k.taps) t /= sum;
  return k;
}

}  // namespace wavefield::baselines
