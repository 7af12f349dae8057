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

#include "wavefield/autodiff/param_store.hpp"

#include "wavefield/errors.hpp"

namespace wavefield::ad {

ParamId ParamStore::add(std::string name, Eigen::MatrixXd init) {
  if (find(name)) throw ArgumentError("duplicate parameter name '" + name + "'");
  names_.push_back(std::move(name));
  tensors_.push_back(std::move(init));
  return ParamId{tensors_.size() - 1};
}

std::optional<ParamId> ParamStore::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return ParamId{i};
  }
  return std::nullopt;
}

ParamId ParamStore::id(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw ArgumentError("unknown parameter '" + std::string(name) + "'");
}

std::size_t ParamStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& t : tensors_) n += static_cast<std::size_t>(t.size());
  return n;
}

ParamStore ParamStore::zeros_like() const {
  ParamStore out;
  out.names_ = names_;
  out.tensors_.reserve(tensors_.size());
  for (const auto& t : tensors_) out.tensors_.push_back(Eigen::MatrixXd::Zero(t.rows(), t.cols()));
  return out;
}

bool ParamStore::same_layout(const ParamStore& other) const {
  if (names_ != other.names_) return false;
  for (std::size_t i = 0; i < tensors_.size(); ++i) {
    if (tensors_[i].rows() != other.tensors_[i].rows() ||
        tensors_[i].cols() != other.tensors_[i].cols()) {
      return false;
    }
  }
  return true;
}

bool ParamStore::all_finite() const {
  for (const auto& t : tensors_) {
    if (!t.allFinite()) return false;
  }
  return true;
}

std::vector<double> ParamStore::flatten() const {
  std::vector<double> flat;
  flat.reserve(scalar_count());
  for (const auto& t : tensors_) flat.insert(flat.end(), t.data(), t.data() + t.size());
  return flat;
}

void ParamStore::unflatten(const std::vector<double>& flat) {
  if (flat.size() != scalar_count()) {
    throw ShapeError("unflatten: expected " + std::to_string(scalar_count()) + " values, got " +
                     std::to_string(flat.size()));
  }
  std::size_t offset = 0;
  for (auto& t : tensors_) {
    std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(offset), t.size(), t.data());
    offset += static_cast<std::size_t>(t.size());
  }
}

bool operator==(const ParamStore& a, const ParamStore& b) {
  if (!a.same_layout(b)) return false;
  for (std::size_t i = 0; i < a.tensors_.size(); ++i) {
    if (a.tensors_[i] != b.tensors_[i]) return false;
  }
  return true;
}

}  // namespace wavefield::ad
