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

namespace wavefield {

// Propagation medium. Defaults are air at 20 degrees C.
struct Medium {
  double c = 343.0;     // m/s
  double rho = 1.204;  // kg/m^3

  // Throws ArgumentError unless both are positive and finite.
  void validate() const;
};

}  // namespace wavefield
