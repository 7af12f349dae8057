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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavefield/acoustics/field_grid.hpp"
#include "wavefield/baselines/fractional_delay.hpp"
#include "wavefield/medium.hpp"

namespace wavefield::baselines {

enum class SolverKind { kFistaLasso, kTikhonov };

std::string to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& name);

// `lambda` is dimensionless. For LASSO it multiplies lambda_max = ||A^H p||_inf,
// the smallest weight that zeroes the solution; for Tikhonov it multiplies the
// largest eigenvalue of A^H A.
struct SparseSolverConfig {
  double lambda = 1e-3;
  int max_iterations = 500;
  double tolerance = 1e-8;
  SolverKind kind = SolverKind::kFistaLasso;

  void validate() const;
};

// Status of an iterative solve. `converged` is false when the iteration cap
// was reached first; the last iterate is still returned.
struct SolveReport {
  int iterations = 0;
  bool converged = true;
  double objective = 0.0;
  std::vector<double> objective_history;
};

// Virtual point sources with time-domain spherical-wave atoms
//   phi_lm[n] = h(n; fs d_lm / c) / (4 pi d_lm)
// (h: windowed-sinc fractional delay). The model is the discrete convolution
//   p[n, m] = sum_l sum_i phi_lm[n - i + offset] alpha_l[i],
// where coefficient index i refers to output sample i - offset so that
// excitations may precede the first recorded sample.
class SphericalDictionary {
 public:
  SphericalDictionary(std::vector<Vec3> sources, std::vector<Vec3> receivers, double fs,
                      Eigen::Index samples, int filter_len, const Medium& medium,
                      std::ptrdiff_t offset = -1);

  // alpha: coefficient_length() x sources  ->  samples x receivers
  Eigen::MatrixXd apply(const Eigen::MatrixXd& alpha) const;
  // samples x receivers  ->  coefficient_length() x sources
  Eigen::MatrixXd adjoint(const Eigen::MatrixXd& residual) const;

  const FractionalDelayKernel& kernel(std::size_t source, std::size_t receiver) const {
    return kernels_[source * receivers_.size() + receiver];
  }
  double amplitude(std::size_t source, std::size_t receiver) const {
    return gains_[source * receivers_.size() + receiver];
  }

  const std::vector<Vec3>& sources() const { return sources_; }
  const std::vector<Vec3>& receivers() const { return receivers_; }
  double fs() const { return fs_; }
  Eigen::Index samples() const { return samples_; }
  int filter_len() const { return filter_len_; }
  std::ptrdiff_t offset() const { return offset_; }
  Eigen::Index coefficient_length() const { return samples_ + offset_; }
  const Medium& medium() const { return medium_; }

  // Same sources, rate and coefficient timing, different receivers.
  SphericalDictionary with_receivers(std::vector<Vec3> receivers) const;

 private:
  std::vector<Vec3> sources_;
  std::vector<Vec3> receivers_;
  double fs_;
  Eigen::Index samples_;
  int filter_len_;
  Medium medium_;
  std::ptrdiff_t offset_;
  std::vector<FractionalDelayKernel> kernels_;
  std::vector<double> gains_;
};

SphericalDictionary build_spherical_dictionary(std::vector<Vec3> sources,
                                               std::vector<Vec3> receivers, double fs,
                                               Eigen::Index samples, int filter_len,
                                               const Medium& medium);

// `count` points on a sphere (Fibonacci lattice) around `center`.
std::vector<Vec3> sphere_sources(const Vec3& center, double radius, std::size_t count);

// Default layout: `count` sources on a sphere of radius twice the (x, y)
// diagonal of the receiver aperture, centered on the aperture.
std::vector<Vec3> default_virtual_sources(const std::vector<Vec3>& receivers,
                                          std::size_t count = 512);

struct TdSolution {
  Eigen::MatrixXd alpha;  // coefficient_length x sources
  SolveReport report;
};

// LASSO estimate (MAP under a Laplace prior) of the spherical-wave
// coefficients by monotone FISTA with adaptive restart.
TdSolution td_sparse_solve(const SphericalDictionary& dict, const FieldGrid& measured,
                           const SparseSolverConfig& config);

// Evaluates a fitted time-domain model at new positions.
FieldGrid td_reconstruct(const SphericalDictionary& dict, const Eigen::MatrixXd& alpha,
                         const std::vector<Vec3>& targets, double t0);

// Plane-wave expansion per DFT bin, psi_l(w, r) = exp(-j w/c k_l . r) with
// in-plane propagation directions k_l = (cos a_l, sin a_l, 0).
struct PwSolution {
  std::vector<double> directions;      // radians
  std::vector<Eigen::Index> bins;      // DFT bins that were solved
  std::vector<double> frequencies;     // Hz, one per bin
  Eigen::MatrixXcd coefficients;       // bins x directions
  Eigen::Index samples = 0;            // DFT length
  double fs = 0.0;
  double t0 = 0.0;
  std::vector<SolveReport> reports;    // one per bin
};

// `count` uniformly spaced in-plane directions starting at 0.
std::vector<double> uniform_directions(std::size_t count = 64);

PwSolution pw_solve(const FieldGrid& measured, std::span<const double> directions, double f_lo,
                    double f_hi, const SparseSolverConfig& config, const Medium& medium);

// Synthesizes the expansion at arbitrary positions. The spectrum is completed
// with its Hermitian mirror so the inverse DFT is real; `max_imag` (optional)
// receives the largest imaginary residue discarded.
FieldGrid pw_reconstruct(const PwSolution& solution, const std::vector<Vec3>& targets,
                         const Medium& medium, double* max_imag = nullptr);

// Support of a plane-wave solution: directions whose coefficient energy
// summed over bins exceeds `relative_threshold` times the largest.
std::vector<std::size_t> pw_support(const PwSolution& solution, double relative_threshold = 1e-2);

struct LambdaSweepRow {
  double lambda = 0.0;
  double residual_norm = 0.0;  // ||A x - p|| summed over bins
  double solution_norm = 0.0;  // ||x||_1 (LASSO) or ||x||_2 (Tikhonov)
};

// Residual and solution norms across a list of lambdas, for choosing lambda
// by inspection (L-curve).
std::vector<LambdaSweepRow> pw_lambda_sweep(const FieldGrid& measured,
                                            std::span<const double> directions, double f_lo,
                                            double f_hi, SparseSolverConfig config,
                                            std::span<const double> lambdas, const Medium& medium);

}  // namespace wavefield::baselines
