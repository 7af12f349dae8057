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

#include "wavefield/autodiff/fast_math.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

namespace wavefield::ad {
namespace {

// pi/2 split in three parts; the leading part has few enough significant
// bits that q * kPio2A is exact for the supported range.
constexpr double kPio2A = 1.57079625129699707031e+00;
constexpr double kPio2B = 7.54978941586159635336e-08;
constexpr double kPio2C = 5.39030285815811905290e-15;
constexpr double kTwoOverPi = 0.63661977236758134308;
constexpr double kMaxArg = 1e8;
constexpr double kShifter = 6755399441055744.0;  // 1.5 * 2^52

}  // namespace

void sincos_array(const double* __restrict x, double* __restrict s, double* __restrict c,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    // Round to nearest through the 1.5 * 2^52 shifter; the low mantissa bits
    // of `shifted` then hold q in two's complement.
    const double shifted = xi * kTwoOverPi + kShifter;
    const double q = shifted - kShifter;
    const double r = ((xi - q * kPio2A) - q * kPio2B) - q * kPio2C;
    const double z = r * r;
    double ps = 1.58962301576546568060e-10;
    ps = ps * z - 2.50507477628578072866e-8;
    ps = ps * z + 2.75573136213857245213e-6;
    ps = ps * z - 1.98412698295895385996e-4;
    ps = ps * z + 8.33333333332211858878e-3;
    ps = ps * z - 1.66666666666666307295e-1;
    const double sr = r + r * z * ps;
    double pc = -1.13585365213876817300e-11;
    pc = pc * z + 2.08757008419747316778e-9;
    pc = pc * z - 2.75573141792967388112e-7;
    pc = pc * z + 2.48015872888517045348e-5;
    pc = pc * z - 1.38888888888730564116e-3;
    pc = pc * z + 4.16666666666665929218e-2;
    const double cr = 1.0 - 0.5 * z + z * z * pc;
    // Quadrant selection with bit masks keeps the loop branch-free.
    const std::uint64_t quadrant = std::bit_cast<std::uint64_t>(shifted);
    const std::uint64_t swap = 0 - (quadrant & 1);
    const std::uint64_t sb = std::bit_cast<std::uint64_t>(sr);
    const std::uint64_t cb = std::bit_cast<std::uint64_t>(cr);
    const std::uint64_t sv = (cb & swap) | (sb & ~swap);
    const std::uint64_t cv = (sb & swap) | (cb & ~swap);
    s[i] = std::bit_cast<double>(sv ^ ((quadrant & 2) << 62));
    c[i] = std::bit_cast<double>(cv ^ (((quadrant + 1) & 2) << 62));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(x[i]) < kMaxArg)) {
      s[i] = std::sin(x[i]);
      c[i] = std::cos(x[i]);
    }
  }
}

}  // namespace wavefield::ad
