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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace wavefield::ad {

struct ParamId {
  std::size_t index = 0;
  friend bool operator==(ParamId, ParamId) = default;
};

// Ordered set of named trainable tensors. Vectors are stored as n x 1
// matrices. Gradients use the same container with identical layout.
class ParamStore {
 public:
  ParamId add(std::string name, Eigen::MatrixXd init);

  std::optional<ParamId> find(std::string_view name) const;
  // Throws ArgumentError when the name is unknown.
  ParamId id(std::string_view name) const;

  Eigen::MatrixXd& operator[](ParamId id) { return tensors_.at(id.index); }
  const Eigen::MatrixXd& operator[](ParamId id) const { return tensors_.at(id.index); }
  Eigen::MatrixXd& operator[](std::string_view name) { return (*this)[id(name)]; }
  const Eigen::MatrixXd& operator[](std::string_view name) const { return (*this)[id(name)]; }

  const std::string& name(ParamId id) const { return names_.at(id.index); }
  std::size_t size() const { return tensors_.size(); }
  std::size_t scalar_count() const;

  // Same names and shapes, all entries zero.
  ParamStore zeros_like() const;
  bool same_layout(const ParamStore& other) const;
  bool all_finite() const;

  // Flattened view in declaration order (column-major within each tensor).
  std::vector<double> flatten() const;
  void unflatten(const std::vector<double>& flat);

  friend bool operator==(const ParamStore& a, const ParamStore& b);

 private:
  std::vector<std::string> names_;
  std::vector<Eigen::MatrixXd> tensors_;
};

}  // namespace wavefield::ad
