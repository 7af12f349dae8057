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

#include "wavefield/baselines/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/FFT>

#include "wavefield/errors.hpp"

namespace wavefield::baselines {
namespace {

using cd = std::complex<double>;

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

template <typename Mat>
Mat soft_threshold(const Mat& v, double tau) {
  Mat out(v.rows(), v.cols());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const auto z = v.data()[k];
    const double mag = std::abs(z);
    out.data()[k] = mag > tau ? z * ((mag - tau) / mag) : decltype(z){};
  }
  return out;
}

template <typename Mat>
double l1_norm(const Mat& v) {
  return v.cwiseAbs().sum();
}

// Largest eigenvalue of A^H A by power iteration.
template <typename Mat, typename Apply, typename Adjoint>
double lipschitz(const Apply& apply, const Adjoint& adjoint, Eigen::Index rows, Eigen::Index cols) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  Mat x(rows, cols);
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if constexpr (std::is_same_v<typename Mat::Scalar, cd>) {
      x.data()[k] = cd(gauss(rng), gauss(rng));
    } else {
      x.data()[k] = gauss(rng);
    }
  }
  double eig = 0.0;
  for (int it = 0; it < 50; ++it) {
    const double n = x.norm();
    if (n == 0.0) return 0.0;
    x /= n;
    Mat y = adjoint(apply(x));
    const double next = y.norm();
    const bool settled = std::abs(next - eig) <= 1e-6 * next;
    eig = next;
    x = std::move(y);
    if (settled) break;
  }
  return eig;
}

// Monotone FISTA with adaptive restart for
//   min_x 0.5 ||A x - b||^2 + lambda ||x||_1.
template <typename Mat, typename Vec, typename Apply, typename Adjoint>
Mat fista(const Apply& apply, const Adjoint& adjoint, const Vec& b, double lambda, double lip,
          Mat x, const SparseSolverConfig& config, SolveReport& report) {
  auto objective = [&](const Mat& v, const Vec& av) {
    return 0.5 * (av - b).squaredNorm() + lambda * l1_norm(v);
  };
  Vec ax = apply(x);
  double fx = objective(x, ax);
  report = SolveReport{};
  report.objective_history.push_back(fx);
  if (lip <= 0.0) {
    report.objective = fx;
    return x;
  }
  Mat y = x;
  Vec ay = ax;
  double t = 1.0;
  bool from_x = true;
  report.converged = false;
  for (int it = 1; it <= config.max_iterations; ++it) {
    Mat z = soft_threshold<Mat>(y - adjoint(ay - b) / lip, lambda / lip);
    Vec az = apply(z);
    const double fz = objective(z, az);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    Mat x_next;
    Vec ax_next;
    double f_next;
    const bool accepted = fz <= fx;
    // A plain proximal step from x cannot increase the objective except
    // through rounding, so x is already stationary.
    const bool stalled = !accepted && from_x;
    if (accepted) {
      x_next = z;
      ax_next = az;
      f_next = fz;
      y = x_next + ((t - 1.0) / t_next) * (x_next - x);
      ay = ax_next + ((t - 1.0) / t_next) * (ax_next - ax);
      t = t_next;
    } else {
      x_next = x;
      ax_next = ax;
      f_next = fx;
      y = x;
      ay = ax;
      t = 1.0;
    }
    from_x = !accepted;
    const double step = (x_next - x).norm();
    const double scale = std::max(x_next.norm(), 1e-300);
    x = std::move(x_next);
    ax = std::move(ax_next);
    fx = f_next;
    report.iterations = it;
    report.objective_history.push_back(fx);
    if (stalled || (accepted && step <= config.tolerance * scale)) {
      report.converged = true;
      break;
    }
  }
  report.objective = fx;
  return x;
}

Eigen::MatrixXcd steering(const std::vector<Vec3>& positions, std::span<const double> directions,
                          double omega, const Medium& medium) {
  Eigen::MatrixXcd h(static_cast<Eigen::Index>(positions.size()),
                     static_cast<Eigen::Index>(directions.size()));
  for (std::size_t l = 0; l < directions.size(); ++l) {
    const double kx = std::cos(directions[l]), ky = std::sin(directions[l]);
    for (std::size_t m = 0; m < positions.size(); ++m) {
      const double phase = -omega / medium.c * (kx * positions[m][0] + ky * positions[m][1]);
      h(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(l)) = std::polar(1.0, phase);
    }
  }
  return h;
}

struct BinProblem {
  std::vector<Eigen::Index> bins;
  Eigen::MatrixXcd spectra;  // bins x positions
};

BinProblem measured_spectra(const FieldGrid& measured, double f_lo, double f_hi) {
  measured.validate();
  if (measured.empty()) throw ArgumentError("plane-wave solve needs a nonempty measurement");
  if (!(f_lo >= 0.0) || !(f_hi > f_lo)) throw ArgumentError("frequency range must satisfy 0 <= lo < hi");
  const Eigen::Index n = measured.samples();
  BinProblem out;
  for (Eigen::Index k = 1; 2 * k < n; ++k) {
    const double f = static_cast<double>(k) * measured.fs / static_cast<double>(n);
    if (f >= f_lo && f <= f_hi) out.bins.push_back(k);
  }
  if (out.bins.empty()) {
    throw ArgumentError("no DFT bin falls in the frequency range; use longer signals or a wider range");
  }
  Eigen::FFT<double> fft;
  out.spectra.resize(static_cast<Eigen::Index>(out.bins.size()),
                     static_cast<Eigen::Index>(measured.position_count()));
  std::vector<double> column(static_cast<std::size_t>(n));
  std::vector<cd> spectrum;
  for (Eigen::Index m = 0; m < out.spectra.cols(); ++m) {
    for (Eigen::Index i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] = measured.pressure(i, m);
    fft.fwd(spectrum, column);
    for (std::size_t b = 0; b < out.bins.size(); ++b) {
      out.spectra(static_cast<Eigen::Index>(b), m) = spectrum[static_cast<std::size_t>(out.bins[b])];
    }
  }
  return out;
}

Eigen::VectorXcd solve_bin(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& p,
                           const SparseSolverConfig& config, double frequency, SolveReport& report) {
  const Eigen::Index dirs = h.cols();
  if (config.kind == SolverKind::kTikhonov) {
    report = SolveReport{};
    if (config.lambda == 0.0) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& s = svd.singularValues();
      const double cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : INFINITY;
      if (h.rows() < dirs || cond > 1e10) {
        throw ConditioningError("plane-wave system at " + std::to_string(frequency) +
                                " Hz is ill-conditioned (condition number " + std::to_string(cond) +
                                "); use lambda > 0");
      }
      Eigen::VectorXcd beta = svd.solve(p);
      report.objective = 0.5 * (h * beta - p).squaredNorm();
      report.objective_history.push_back(report.objective);
      return beta;
    }
    const Eigen::MatrixXcd gram = h.adjoint() * h;
    const double top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(gram, Eigen::EigenvaluesOnly)
                           .eigenvalues()
                           .maxCoeff();
    const double reg = config.lambda * top;
    Eigen::MatrixXcd system = gram;
    system.diagonal().array() += reg;
    Eigen::VectorXcd beta = system.ldlt().solve(h.adjoint() * p);
    report.objective = 0.5 * (h * beta - p).squaredNorm() + 0.5 * reg * beta.squaredNorm();
    report.objective_history.push_back(report.objective);
    return beta;
  }
  const Eigen::VectorXcd atb = h.adjoint() * p;
  const double lambda = config.lambda * atb.cwiseAbs().maxCoeff();
  auto apply = [&](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return h * x; };
  auto adjoint = [&](const Eigen::VectorXcd& r) -> Eigen::VectorXcd { return h.adjoint() * r; };
  const double lip = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h.adjoint() * h,
                                                                     Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .maxCoeff();
  return fista<Eigen::VectorXcd, Eigen::VectorXcd>(apply, adjoint, p, lambda, lip,
                                                   Eigen::VectorXcd::Zero(dirs), config, report);
}

}  // namespace

std::string to_string(SolverKind kind) {
  return kind == SolverKind::kTikhonov ? "tikhonov" : "fista-lasso";
}

SolverKind solver_kind_from_string(const std::string& name) {
  if (name == "fista-lasso" || name == "lasso") return SolverKind::kFistaLasso;
  if (name == "tikhonov") return SolverKind::kTikhonov;
  throw ArgumentError("unknown solver kind '" + name + "' (expected fista-lasso or tikhonov)");
}

void SparseSolverConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ArgumentError("lambda must be finite and >= 0");
  if (max_iterations < 1) throw ArgumentError("max_iterations must be positive");
  if (!(tolerance > 0.0)) throw ArgumentError("tolerance must be positive");
}

SphericalDictionary::SphericalDictionary(std::vector<Vec3> sources, std::vector<Vec3> receivers,
                                         double fs, Eigen::Index samples, int filter_len,
                                         const Medium& medium, std::ptrdiff_t offset)
    : sources_(std::move(sources)),
      receivers_(std::move(receivers)),
      fs_(fs),
      samples_(samples),
      filter_len_(filter_len),
      medium_(medium),
      offset_(offset) {
  medium_.validate();
  if (sources_.empty() || receivers_.empty()) throw ArgumentError("dictionary needs sources and receivers");
  if (!(fs_ > 0.0)) throw ArgumentError("fs must be positive");
  if (samples_ < 1) throw ArgumentError("dictionary needs at least one sample");
  if (filter_len_ < 1 || filter_len_ % 2 == 0) throw ArgumentError("filter length must be odd");
  kernels_.reserve(sources_.size() * receivers_.size());
  gains_.reserve(sources_.size() * receivers_.size());
  double max_delay = 0.0;
  for (std::size_t l = 0; l < sources_.size(); ++l) {
    for (std::size_t m = 0; m < receivers_.size(); ++m) {
      const double d = distance(sources_[l], receivers_[m]);
      if (!(d > 1e-9)) {
        throw ArgumentError("virtual source " + std::to_string(l) + " coincides with receiver " +
                            std::to_string(m));
      }
      const double delay = fs_ * d / medium_.c;
      max_delay = std::max(max_delay, delay);
      kernels_.push_back(fractional_delay(delay, filter_len_));
      gains_.push_back(1.0 / (4.0 * std::numbers::pi * d));
    }
  }
  if (offset_ < 0) offset_ = static_cast<std::ptrdiff_t>(std::ceil(max_delay)) + filter_len_ / 2;
}

Eigen::MatrixXd SphericalDictionary::apply(const Eigen::MatrixXd& alpha) const {
  const Eigen::Index nc = coefficient_length();
  if (alpha.rows() != nc || alpha.cols() != static_cast<Eigen::Index>(sources_.size())) {
    throw ShapeError("coefficient matrix must be coefficient_length x sources");
  }
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(samples_, static_cast<Eigen::Index>(receivers_.size()));
  for (std::size_t l = 0; l < sources_.size(); ++l) {
    const auto a = alpha.col(static_cast<Eigen::Index>(l));
    if (a.isZero(0.0)) continue;
    for (std::size_t m = 0; m < receivers_.size(); ++m) {
      const auto& k = kernel(l, m);
      const double g = amplitude(l, m);
      auto out = p.col(static_cast<Eigen::Index>(m));
      for (std::size_t j = 0; j < k.taps.size(); ++j) {
        // n = i + shift
        const std::ptrdiff_t shift = k.first + static_cast<std::ptrdiff_t>(j) - offset_;
        const Eigen::Index i0 = std::max<Eigen::Index>(0, -shift);
        const Eigen::Index i1 = std::min<Eigen::Index>(nc, samples_ - shift);
        if (i1 <= i0) continue;
        out.segment(i0 + shift, i1 - i0) += (g * k.taps[j]) * a.segment(i0, i1 - i0);
      }
    }
  }
  return p;
}

Eigen::MatrixXd SphericalDictionary::adjoint(const Eigen::MatrixXd& residual) const {
  if (residual.rows() != samples_ || residual.cols() != static_cast<Eigen::Index>(receivers_.size())) {
    throw ShapeError("residual must be samples x receivers");
  }
  const Eigen::Index nc = coefficient_length();
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(nc, static_cast<Eigen::Index>(sources_.size()));
  for (std::size_t l = 0; l < sources_.size(); ++l) {
    auto a = alpha.col(static_cast<Eigen::Index>(l));
    for (std::size_t m = 0; m < receivers_.size(); ++m) {
      const auto& k = kernel(l, m);
      const double g = amplitude(l, m);
      const auto r = residual.col(static_cast<Eigen::Index>(m));
      for (std::size_t j = 0; j < k.taps.size(); ++j) {
        const std::ptrdiff_t shift = k.first + static_cast<std::ptrdiff_t>(j) - offset_;
        const Eigen::Index i0 = std::max<Eigen::Index>(0, -shift);
        const Eigen::Index i1 = std::min<Eigen::Index>(nc, samples_ - shift);
        if (i1 <= i0) continue;
        a.segment(i0, i1 - i0) += (g * k.taps[j]) * r.segment(i0 + shift, i1 - i0);
      }
    }
  }
  return alpha;
}

SphericalDictionary SphericalDictionary::with_receivers(std::vector<Vec3> receivers) const {
  return SphericalDictionary(sources_, std::move(receivers), fs_, samples_, filter_len_, medium_, offset_);
}

SphericalDictionary build_spherical_dictionary(std::vector<Vec3> sources,
                                               std::vector<Vec3> receivers, double fs,
                                               Eigen::Index samples, int filter_len,
                                               const Medium& medium) {
  return SphericalDictionary(std::move(sources), std::move(receivers), fs, samples, filter_len, medium);
}

std::vector<Vec3> sphere_sources(const Vec3& center, double radius, std::size_t count) {
  if (!(radius > 0.0)) throw ArgumentError("sphere radius must be positive");
  std::vector<Vec3> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.push_back({center[0] + radius * r * std::cos(phi), center[1] + radius * r * std::sin(phi),
                   center[2] + radius * z});
  }
  return out;
}

std::vector<Vec3> default_virtual_sources(const std::vector<Vec3>& receivers, std::size_t count) {
  if (receivers.empty()) throw ArgumentError("no receivers");
  Vec3 lo = receivers.front(), hi = receivers.front();
  for (const auto& r : receivers) {
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], r[a]);
      hi[a] = std::max(hi[a], r[a]);
    }
  }
  const Vec3 center{0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.5 * (lo[2] + hi[2])};
  const double diagonal = std::hypot(hi[0] - lo[0], hi[1] - lo[1]);
  return sphere_sources(center, 2.0 * std::max(diagonal, 0.1), count);
}

TdSolution td_sparse_solve(const SphericalDictionary& dict, const FieldGrid& measured,
                           const SparseSolverConfig& config) {
  config.validate();
  measured.validate();
  if (config.kind != SolverKind::kFistaLasso) {
    throw ArgumentError("the time-domain baseline supports the fista-lasso solver only");
  }
  if (measured.samples() != dict.samples() || measured.position_count() != dict.receivers().size()) {
    throw ShapeError("measurement does not match the dictionary's receivers and length");
  }
  if (std::abs(measured.fs - dict.fs()) > 1e-9 * dict.fs()) {
    throw ArgumentError("measurement sample rate differs from the dictionary's");
  }
  for (std::size_t m = 0; m < measured.position_count(); ++m) {
    if (distance(measured.positions[m], dict.receivers()[m]) > 1e-9) {
      throw ArgumentError("measurement position " + std::to_string(m) + " differs from dictionary receiver");
    }
  }
  const Eigen::MatrixXd& b = measured.pressure;
  const Eigen::Index rows = dict.coefficient_length();
  const auto cols = static_cast<Eigen::Index>(dict.sources().size());
  auto apply = [&](const Eigen::MatrixXd& x) { return dict.apply(x); };
  auto adjoint = [&](const Eigen::MatrixXd& r) { return dict.adjoint(r); };
  const double lambda = config.lambda * dict.adjoint(b).cwiseAbs().maxCoeff();
  TdSolution out;
  if (b.isZero(0.0)) {
    out.alpha = Eigen::MatrixXd::Zero(rows, cols);
    out.report.objective_history.push_back(0.0);
    return out;
  }
  const double lip = 1.01 * lipschitz<Eigen::MatrixXd>(apply, adjoint, rows, cols);
  out.alpha = fista<Eigen::MatrixXd, Eigen::MatrixXd>(apply, adjoint, b, lambda, lip,
                                                      Eigen::MatrixXd::Zero(rows, cols), config,
                                                      out.report);
  return out;
}

FieldGrid td_reconstruct(const SphericalDictionary& dict, const Eigen::MatrixXd& alpha,
                         const std::vector<Vec3>& targets, double t0) {
  const SphericalDictionary at = dict.with_receivers(targets);
  FieldGrid out;
  out.positions = targets;
  out.fs = dict.fs();
  out.t0 = t0;
  out.pressure = at.apply(alpha);
  return out;
}

std::vector<double> uniform_directions(std::size_t count) {
  if (count == 0) throw ArgumentError("need at least one direction");
  std::vector<double> out(count);
  for (std::size_t l = 0; l < count; ++l) {
    out[l] = 2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(count);
  }
  return out;
}

PwSolution pw_solve(const FieldGrid& measured, std::span<const double> directions, double f_lo,
                    double f_hi, const SparseSolverConfig& config, const Medium& medium) {
  config.validate();
  medium.validate();
  if (directions.empty()) throw ArgumentError("need at least one direction");
  const BinProblem problem = measured_spectra(measured, f_lo, f_hi);
  PwSolution out;
  out.directions.assign(directions.begin(), directions.end());
  out.bins = problem.bins;
  out.samples = measured.samples();
  out.fs = measured.fs;
  out.t0 = measured.t0;
  out.coefficients.resize(static_cast<Eigen::Index>(out.bins.size()),
                          static_cast<Eigen::Index>(directions.size()));
  out.reports.resize(out.bins.size());
  for (std::size_t b = 0; b < out.bins.size(); ++b) {
    const double f = static_cast<double>(out.bins[b]) * out.fs / static_cast<double>(out.samples);
    out.frequencies.push_back(f);
    const Eigen::MatrixXcd h = steering(measured.positions, directions, 2.0 * std::numbers::pi * f, medium);
    const Eigen::VectorXcd p = problem.spectra.row(static_cast<Eigen::Index>(b)).transpose();
    out.coefficients.row(static_cast<Eigen::Index>(b)) =
        solve_bin(h, p, config, f, out.reports[b]).transpose();
  }
  return out;
}

FieldGrid pw_reconstruct(const PwSolution& solution, const std::vector<Vec3>& targets,
                         const Medium& medium, double* max_imag) {
  medium.validate();
  const Eigen::Index n = solution.samples;
  FieldGrid out;
  out.positions = targets;
  out.fs = solution.fs;
  out.t0 = solution.t0;
  out.pressure = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(targets.size()));
  double worst = 0.0;
  Eigen::MatrixXcd values(static_cast<Eigen::Index>(solution.bins.size()),
                          static_cast<Eigen::Index>(targets.size()));
  for (std::size_t b = 0; b < solution.bins.size(); ++b) {
    const Eigen::MatrixXcd h = steering(targets, solution.directions,
                                        2.0 * std::numbers::pi * solution.frequencies[b], medium);
    values.row(static_cast<Eigen::Index>(b)) =
        (h * solution.coefficients.row(static_cast<Eigen::Index>(b)).transpose()).transpose();
  }
  Eigen::FFT<double> fft;
  std::vector<cd> spectrum(static_cast<std::size_t>(n));
  std::vector<cd> signal;
  for (Eigen::Index m = 0; m < out.pressure.cols(); ++m) {
    std::fill(spectrum.begin(), spectrum.end(), cd{});
    for (std::size_t b = 0; b < solution.bins.size(); ++b) {
      const auto k = static_cast<std::size_t>(solution.bins[b]);
      const cd v = values(static_cast<Eigen::Index>(b), m);
      spectrum[k] = v;
      spectrum[static_cast<std::size_t>(n) - k] = std::conj(v);
    }
    fft.inv(signal, spectrum);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.pressure(i, m) = signal[static_cast<std::size_t>(i)].real();
      worst = std::max(worst, std::abs(signal[static_cast<std::size_t>(i)].imag()));
    }
  }
  if (max_imag != nullptr) *max_imag = worst;
  return out;
}

std::vector<std::size_t> pw_support(const PwSolution& solution, double relative_threshold) {
  const Eigen::VectorXd energy = solution.coefficients.cwiseAbs2().colwise().sum().transpose();
  std::vector<std::size_t> out;
  if (energy.size() == 0) return out;
  const double top = energy.maxCoeff();
  if (top <= 0.0) return out;
  for (Eigen::Index l = 0; l < energy.size(); ++l) {
    if (energy(l) > relative_threshold * top) out.push_back(static_cast<std::size_t>(l));
  }
  return out;
}

std::vector<LambdaSweepRow> pw_lambda_sweep(const FieldGrid& measured,
                                            std::span<const double> directions, double f_lo,
                                            double f_hi, SparseSolverConfig config,
                                            std::span<const double> lambdas, const Medium& medium) {
  const BinProblem problem = measured_spectra(measured, f_lo, f_hi);
  std::vector<Eigen::MatrixXcd> steerings;
  for (Eigen::Index k : problem.bins) {
    const double f = static_cast<double>(k) * measured.fs / static_cast<double>(measured.samples());
    steerings.push_back(steering(measured.positions, directions, 2.0 * std::numbers::pi * f, medium));
  }
  std::vector<LambdaSweepRow> rows;
  for (double lambda : lambdas) {
    config.lambda = lambda;
    config.validate();
    LambdaSweepRow row;
    row.lambda = lambda;
    double res2 = 0.0, sol = 0.0;
    for (std::size_t b = 0; b < problem.bins.size(); ++b) {
      const Eigen::VectorXcd p = problem.spectra.row(static_cast<Eigen::Index>(b)).transpose();
      SolveReport report;
      const double f = static_cast<double>(problem.bins[b]) * measured.fs /
                       static_cast<double>(measured.samples());
      const Eigen::VectorXcd beta = solve_bin(steerings[b], p, config, f, report);
      res2 += (steerings[b] * beta - p).squaredNorm();
      sol += config.kind == SolverKind::kTikhonov ? beta.squaredNorm() : l1_norm(beta);
    }
    row.residual_norm = std::sqrt(res2);
    row.solution_norm = config.kind == SolverKind::kTikhonov ? std::sqrt(sol) : sol;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wavefield::baselines
