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

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wavefield/autodiff/jet.hpp"

namespace wavefield {

// (x [m], y [m], t [s])
using SpaceTime = std::array<double, 3>;

// Axis-aligned box over (x, y, t).
struct Box3 {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  bool contains(const SpaceTime& p) const;
  bool nondegenerate() const;
};

// A pressure field that can report its value, spatial-temporal gradient and
// Hessian diagonal at any point. Implemented by the trained network and by
// the analytic oracle fields.
class DifferentiableField {
 public:
  virtual ~DifferentiableField() = default;

  virtual ad::Jet2 query(const SpaceTime& point) const = 0;

  virtual std::vector<ad::Jet2> query_batch(std::span<const SpaceTime> points) const {
    std::vector<ad::Jet2> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(query(p));
    return out;
  }

  // Values only.
  virtual Eigen::VectorXd evaluate(std::span<const SpaceTime> points) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      out(static_cast<Eigen::Index>(i)) = query(points[i]).value;
    }
    return out;
  }
};

}  // namespace wavefield
