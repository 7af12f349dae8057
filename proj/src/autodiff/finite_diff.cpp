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

#include "wavefield/autodiff/finite_diff.hpp"

#include <algorithm>
#include <cmath>

#include "wavefield/errors.hpp"

namespace wavefield::ad {

FiniteDiffEstimate finite_diff_probe(const ScalarMap& f, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw ArgumentError("finite_diff_probe: step must be positive");
  FiniteDiffEstimate est;
  est.grad.resize(x.size());
  est.second.resize(x.size());
  std::vector<double> probe(x.begin(), x.end());
  const double f0 = f(probe);
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    est.grad[i] = (fp - fm) / (2.0 * h);
    est.second[i] = (fp - 2.0 * f0 + fm) / (h * h);
  }
  return est;
}

double relative_error(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace wavefield::ad
