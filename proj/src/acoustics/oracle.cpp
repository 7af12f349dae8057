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

#include "wavefield/acoustics/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wavefield/baselines/fractional_delay.hpp"
#include "wavefield/errors.hpp"

namespace wavefield {

void Medium::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ArgumentError("speed of sound must be positive");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ArgumentError("density must be positive");
}

double GaussianPulse::value(double t) const {
  const double a = t - delay;
  const double w = 2.0 * std::numbers::pi * center_frequency;
  return std::exp(-a * a / (2.0 * sigma * sigma)) * std::sin(w * a);
}

double GaussianPulse::first(double t) const {
  const double a = t - delay;
  const double w = 2.0 * std::numbers::pi * center_frequency;
  const double s2 = sigma * sigma;
  const double g = std::exp(-a * a / (2.0 * s2));
  return g * (w * std::cos(w * a) - a / s2 * std::sin(w * a));
}

double GaussianPulse::second(double t) const {
  const double a = t - delay;
  const double w = 2.0 * std::numbers::pi * center_frequency;
  const double s2 = sigma * sigma;
  const double g = std::exp(-a * a / (2.0 * s2));
  return g * ((a * a / (s2 * s2) - 1.0 / s2 - w * w) * std::sin(w * a) -
              2.0 * w * a / s2 * std::cos(w * a));
}

void PlaneWavePulseSpec::validate() const {
  if (pulses.empty()) throw ArgumentError("plane-wave pulse spec has no pulses");
  for (const auto& p : pulses) {
    if (!(p.direction >= 0.0 && p.direction < 2.0 * std::numbers::pi)) {
      throw ArgumentError("pulse direction must lie in [0, 2 pi)");
    }
    if (!std::isfinite(p.amplitude)) throw ArgumentError("pulse amplitude must be finite");
    if (!(p.waveform.sigma > 0.0)) throw ArgumentError("pulse sigma must be positive");
    if (!(p.waveform.center_frequency >= 0.0)) {
      throw ArgumentError("pulse center frequency must be non-negative");
    }
  }
}

PlaneWavePulseField::PlaneWavePulseField(PlaneWavePulseSpec spec, Medium medium)
    : spec_(std::move(spec)), medium_(medium) {
  spec_.validate();
  medium_.validate();
}

ad::Jet2 PlaneWavePulseField::query(const SpaceTime& point) const {
  ad::Jet2 jet;
  const double c = medium_.c;
  for (const auto& p : spec_.pulses) {
    const double kx = std::cos(p.direction);
    const double ky = std::sin(p.direction);
    const double tau = point[2] - (point[0] * kx + point[1] * ky) / c;
    const double s0 = p.amplitude * p.waveform.value(tau);
    const double s1 = p.amplitude * p.waveform.first(tau);
    const double s2 = p.amplitude * p.waveform.second(tau);
    jet.value += s0;
    jet.grad[ad::kX] -= s1 * kx / c;
    jet.grad[ad::kY] -= s1 * ky / c;
    jet.grad[ad::kT] += s1;
    jet.hdiag[ad::kX] += s2 * kx * kx / (c * c);
    jet.hdiag[ad::kY] += s2 * ky * ky / (c * c);
    jet.hdiag[ad::kT] += s2;
  }
  return jet;
}

PlaneWavePulseResult planewave_pulse_field(const PlaneWavePulseSpec& spec, const Medium& medium,
                                           const GridRequest& request) {
  PlaneWavePulseField field(spec, medium);
  FieldGrid grid = sample_field(field, request);
  return {std::move(grid), std::move(field)};
}

void RoomSpec::validate() const {
  for (double d : dimensions) {
    if (!(d > 0.0)) throw ArgumentError("room dimensions must be positive");
  }
  for (double b : beta) {
    if (!(b >= -1.0 && b <= 1.0)) throw ArgumentError("reflection coefficients must lie in [-1, 1]");
  }
  if (max_order < 0) throw ArgumentError("max image order must be >= 0");
}

bool RoomSpec::contains(const Vec3& p) const {
  for (int i = 0; i < 3; ++i) {
    if (!(p[i] >= 0.0 && p[i] <= dimensions[i])) return false;
  }
  return true;
}

std::vector<ImageSource> image_sources(const RoomSpec& room, const Vec3& source,
                                       const Vec3& receiver) {
  room.validate();
  if (!room.contains(source)) throw ArgumentError("source lies outside the room");
  if (!room.contains(receiver)) throw ArgumentError("receiver lies outside the room");
  const int n = room.max_order;
  std::vector<ImageSource> out;
  // Image coordinate along axis i: (1 - 2 p_i) s_i + 2 m_i L_i, reflecting
  // |m_i - p_i| times off the wall at 0 and |m_i| times off the wall at L_i.
  for (int px = 0; px <= 1; ++px) {
    for (int py = 0; py <= 1; ++py) {
      for (int pz = 0; pz <= 1; ++pz) {
        const std::array<int, 3> parity{px, py, pz};
        for (int mx = -n - 1; mx <= n + 1; ++mx) {
          for (int my = -n - 1; my <= n + 1; ++my) {
            for (int mz = -n - 1; mz <= n + 1; ++mz) {
              const std::array<int, 3> m{mx, my, mz};
              int order = 0;
              double gain = 1.0;
              ImageSource img;
              for (int i = 0; i < 3; ++i) {
                const int low = std::abs(m[i] - parity[i]);
                const int high = std::abs(m[i]);
                order += low + high;
                gain *= std::pow(room.beta[2 * i], low) * std::pow(room.beta[2 * i + 1], high);
                img.position[i] = (1 - 2 * parity[i]) * source[i] + 2.0 * m[i] * room.dimensions[i];
              }
              if (order > n) continue;
              img.order = order;
              img.gain = gain;
              img.distance = std::sqrt(std::pow(img.position[0] - receiver[0], 2) +
                                       std::pow(img.position[1] - receiver[1], 2) +
                                       std::pow(img.position[2] - receiver[2], 2));
              out.push_back(img);
            }
          }
        }
      }
    }
  }
  return out;
}

Eigen::VectorXd image_source_rir(const RoomSpec& room, const SourceSpec& source,
                                 const Vec3& receiver, double fs, double duration,
                                 const Medium& medium) {
  medium.validate();
  if (!(fs > 0.0)) throw ArgumentError("sample rate must be positive");
  if (!(duration > 0.0)) throw ArgumentError("duration must be positive");
  if (source.waveform.empty()) throw ArgumentError("source waveform is empty");
  const auto len = static_cast<Eigen::Index>(std::llround(duration * fs));
  Eigen::VectorXd h = Eigen::VectorXd::Zero(len);
  for (const auto& img : image_sources(room, source.position, receiver)) {
    if (img.distance <= 0.0) throw ArgumentError("receiver coincides with an image source");
    if (img.gain == 0.0) continue;
    const double amp = img.gain / (4.0 * std::numbers::pi * img.distance);
    const auto kernel = baselines::fractional_delay(fs * img.distance / medium.c);
    for (std::size_t k = 0; k < kernel.taps.size(); ++k) {
      const std::ptrdiff_t n = kernel.first + static_cast<std::ptrdiff_t>(k);
      if (n >= 0 && n < len) h(n) += amp * kernel.taps[k];
    }
  }
  if (source.waveform.size() == 1) return source.waveform[0] * h;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(len);
  for (Eigen::Index n = 0; n < len; ++n) {
    if (h(n) == 0.0) continue;
    for (std::size_t k = 0; k < source.waveform.size() && n + static_cast<Eigen::Index>(k) < len; ++k) {
      out(n + static_cast<Eigen::Index>(k)) += h(n) * source.waveform[k];
    }
  }
  return out;
}

FieldGrid image_source_grid(const RoomSpec& room, const SourceSpec& source,
                            const std::vector<Vec3>& positions, double fs, double duration,
                            const Medium& medium) {
  FieldGrid grid;
  grid.positions = positions;
  grid.fs = fs;
  grid.t0 = 0.0;
  const auto len = static_cast<Eigen::Index>(std::llround(duration * fs));
  grid.pressure.resize(len, static_cast<Eigen::Index>(positions.size()));
  for (std::size_t m = 0; m < positions.size(); ++m) {
    grid.pressure.col(static_cast<Eigen::Index>(m)) =
        image_source_rir(room, source, positions[m], fs, duration, medium);
  }
  return grid;
}

std::vector<Vec2> particle_velocity(const DifferentiableField& field, const Medium& medium,
                                    const Vec2& position, const std::vector<double>& times) {
  medium.validate();
  std::vector<Vec2> u(times.size(), Vec2{0.0, 0.0});
  if (times.size() < 2) return u;
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw ArgumentError("time grid must be increasing");
  for (std::size_t n = 1; n < times.size(); ++n) {
    const double step = times[n] - times[n - 1];
    if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt)) + 1e-6 * dt) {
      throw ArgumentError("time grid is not uniform at index " + std::to_string(n));
    }
  }
  std::vector<SpaceTime> points;
  points.reserve(times.size());
  for (double t : times) points.push_back({position[0], position[1], t});
  const auto jets = field.query_batch(points);
  const double k = -dt / (2.0 * medium.rho);
  for (std::size_t n = 1; n < times.size(); ++n) {
    for (int a = 0; a < 2; ++a) {
      u[n][a] = u[n - 1][a] + k * (jets[n].grad[a] + jets[n - 1].grad[a]);
    }
  }
  return u;
}

Vec2 intensity(double pressure, const Vec2& velocity) {
  return {pressure * velocity[0], pressure * velocity[1]};
}

}  // namespace wavefield
