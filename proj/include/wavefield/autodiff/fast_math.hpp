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

namespace wavefield::ad {

// Element-wise sin and cos of n doubles. Branch-free Cody-Waite reduction to
// [-pi/4, pi/4] followed by minimax polynomials; auto-vectorizes. Accurate to
// a couple of ulp for |x| < 1e8; larger or non-finite inputs fall back to the
// standard library.
void sincos_array(const double* x, double* s, double* c, std::size_t n);

}  // namespace wavefield::ad
