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

#include <functional>
#include <span>
#include <vector>

namespace wavefield::ad {

struct FiniteDiffEstimate {
  std::vector<double> grad;
  // Pure second derivatives along each coordinate.
  std::vector<double> second;
};

using ScalarMap = std::function<double(std::span<const double>)>;

// Central-difference gradient and Hessian-diagonal estimates of `f` at `x`.
// Used as an independent oracle for jets and reverse-mode gradients.
FiniteDiffEstimate finite_diff_probe(const ScalarMap& f, std::span<const double> x, double h);

// |a - b| / max(|a|, |b|, floor); the floor keeps comparisons of values near
// zero meaningful.
double relative_error(double a, double b, double floor = 1.0);

}  // namespace wavefield::ad
