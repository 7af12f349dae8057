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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wavefield/acoustics/field_grid.hpp"
#include "wavefield/field.hpp"
#include "wavefield/medium.hpp"

namespace wavefield {

// Gaussian-modulated sinusoid
//   s(t) = exp(-(t - delay)^2 / (2 sigma^2)) * sin(2 pi f (t - delay))
// with closed-form first and second derivatives.
struct GaussianPulse {
  double center_frequency = 500.0;  // Hz
  double sigma = 1e-3;              // s
  double delay = 0.0;               // s

  double value(double t) const;
  double first(double t) const;
  double second(double t) const;
};

struct PlaneWavePulse {
  double direction = 0.0;  // propagation azimuth in [0, 2 pi)
  double amplitude = 1.0;  // Pa
  GaussianPulse waveform{};
};

struct PlaneWavePulseSpec {
  std::vector<PlaneWavePulse> pulses;

  void validate() const;
};

// p(t, r) = sum_l A_l s_l(t - (r . k_l) / c): an exact solution of the
// homogeneous 2D wave equation.
class PlaneWavePulseField final : public DifferentiableField {
 public:
  PlaneWavePulseField(PlaneWavePulseSpec spec, Medium medium);

  ad::Jet2 query(const SpaceTime& point) const override;

  const PlaneWavePulseSpec& spec() const { return spec_; }
  const Medium& medium() const { return medium_; }

 private:
  PlaneWavePulseSpec spec_;
  Medium medium_;
};

struct PlaneWavePulseResult {
  FieldGrid grid;
  PlaneWavePulseField field;
};

PlaneWavePulseResult planewave_pulse_field(const PlaneWavePulseSpec& spec, const Medium& medium,
                                           const GridRequest& request);

// Shoebox room with frequency-independent wall reflection coefficients in the
// order x=0, x=Lx, y=0, y=Ly, z=0, z=Lz.
struct RoomSpec {
  Vec3 dimensions{6.12, 5.77, 3.07};
  std::array<double, 6> beta{0.35, 0.35, 0.35, 0.35, 0.35, 0.35};
  int max_order = 3;

  void validate() const;
  bool contains(const Vec3& p) const;
};

struct SourceSpec {
  Vec3 position{};
  // Excitation samples at the output rate (Pa m); a unit impulse by default.
  std::vector<double> waveform{1.0};
};

struct ImageSource {
  Vec3 position{};
  int order = 0;      // number of wall reflections
  double gain = 1.0;  // product of reflection coefficients
  double distance = 0.0;
};

// All image sources with reflection order <= room.max_order as seen from
// `receiver`.
std::vector<ImageSource> image_sources(const RoomSpec& room, const Vec3& source,
                                       const Vec3& receiver);

// Room impulse response at `receiver`: each image contributes
// gain / (4 pi d) delayed by d / c through a fractional-delay filter,
// convolved with the source waveform.
Eigen::VectorXd image_source_rir(const RoomSpec& room, const SourceSpec& source,
                                 const Vec3& receiver, double fs, double duration,
                                 const Medium& medium);

// RIRs at every position, packed as a FieldGrid starting at t0 = 0.
FieldGrid image_source_grid(const RoomSpec& room, const SourceSpec& source,
                            const std::vector<Vec3>& positions, double fs, double duration,
                            const Medium& medium);

using Vec2 = std::array<double, 2>;

// Particle velocity from Euler's equation, u(t) = -(1/rho) int_{t0}^{t} grad p,
// integrated with the cumulative trapezoidal rule on `times` (uniform, starting
// where the field is at rest).
std::vector<Vec2> particle_velocity(const DifferentiableField& field, const Medium& medium,
                                    const Vec2& position, const std::vector<double>& times);

// Instantaneous intensity p * u.
Vec2 intensity(double pressure, const Vec2& velocity);

}  // namespace wavefield
