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

// Acceptance checks. Usage: wavefield_acceptance [criterion ...]
// Prints one PASS/FAIL line per criterion; exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wavefield/acoustics/oracle.hpp"
#include "wavefield/baselines/baselines.hpp"
#include "wavefield/cli.hpp"
#include "wavefield/io/csv.hpp"
#include "wavefield/io/run_config.hpp"
#include "wavefield/metrics.hpp"
#include "wavefield/network.hpp"
#include "wavefield/physics.hpp"
#include "wavefield/training.hpp"

using namespace wavefield;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kJetFirstTol = 1e-6;
constexpr double kJetSecondTol = 1e-4;
constexpr double kBackwardTol = 1e-5;
constexpr double kResidualTol = 1e-8;
constexpr double kMinCorrelation = 0.95;
constexpr double kMaxNmseDb = -15.0;
constexpr double kImpedanceTol = 0.01;
constexpr double kIntensityDegTol = 1.0;
constexpr double kPwNmseDb = -30.0;
constexpr double kOffSupportTol = 1e-6;
constexpr double kArrivalTolSamples = 1.0;
constexpr double kMaeDrop = 0.5;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

const fs::path kReportDir = "acceptance_reports";

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::span<const double> flat(const Eigen::MatrixXd& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

// ---------------------------------------------------------------- 1

// Five-point stencils.
double fd_first(const std::function<double(double)>& f, double h) {
  return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
}

double fd_second(const std::function<double(double)>& f, double h) {
  return (-f(2 * h) + 16 * f(h) - 30 * f(0.0) + 16 * f(-h) - f(-2 * h)) / (12 * h * h);
}

double rel(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

ad::NodeId record_loss(ad::Tape& tape, const NetParams& p, const NetConfig& net,
                       const std::vector<SpaceTime>& data_pts, const Eigen::VectorXd& targets,
                       const std::vector<SpaceTime>& colloc, double inv_c2) {
  const ad::NodeId d = record_forward(tape, p, net, tape.input(seed_inputs(net, data_pts, false)));
  const ad::NodeId ld = tape.log_scaled(tape.mean_abs_error(d, targets), p.id(kLogScaleData));
  const ad::NodeId f = record_forward(tape, p, net, tape.input(seed_inputs(net, colloc, true)));
  const ad::NodeId lf = tape.log_scaled(tape.mean_abs_wave_residual(f, inv_c2), p.id(kLogScalePde));
  return tape.add(ld, lf);
}

Outcome criterion_1() {
  Outcome o;
  std::mt19937_64 rng(20261);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst1 = 0.0, worst2 = 0.0, worst_bw = 0.0;
  const double inv_c2 = 1.0 / (343.0 * 343.0);
  for (int trial = 0; trial < 100; ++trial) {
    NetConfig net;
    net.kind = trial % 2 == 0 ? NetKind::kMlp : NetKind::kModifiedMlp;
    net.depth = 1 + static_cast<int>(rng() % 3);
    net.width = 1 + static_cast<int>(rng() % 16);
    net.omega0 = 1.0 + 29.0 * u01(rng);
    net.sigma_output = trial % 4 >= 2;
    net.pressure_scale = 0.1 + 2.0 * u01(rng);
    net.input_bounds = Box3{{-0.5 * u01(rng) - 0.1, -0.5 * u01(rng) - 0.1, 0.0},
                            {0.5 * u01(rng) + 0.1, 0.5 * u01(rng) + 0.1, 0.01 + 0.05 * u01(rng)}};
    NetParams p = init_siren(net, rng());
    set_adaptive_weights(p, AdaptiveWeights::from_scales(0.5 + u01(rng), 1.0 + 10.0 * u01(rng)));
    auto random_point = [&] {
      SpaceTime x;
      for (int a = 0; a < 3; ++a) {
        x[a] = net.input_bounds.lo[a] + (net.input_bounds.hi[a] - net.input_bounds.lo[a]) * u01(rng);
      }
      return x;
    };

    // Input derivatives, compared in normalized coordinates so the axes share one scale.
    const SpaceTime x = random_point();
    const ad::Jet2 j = forward_jet(p, net, x);
    std::array<double, 3> half{}, g{}, h2{}, fd_g{}, fd_h{};
    for (int a = 0; a < 3; ++a) {
      half[a] = 0.5 * (net.input_bounds.hi[a] - net.input_bounds.lo[a]);
      const auto along = [&](double d) {
        SpaceTime q = x;
        q[a] += d * half[a];
        return forward(p, net, q);
      };
      const double step = 2e-3 / net.omega0;
      g[a] = j.grad[a] * half[a];
      h2[a] = j.hdiag[a] * half[a] * half[a];
      fd_g[a] = fd_first(along, step);
      fd_h[a] = fd_second(along, step);
    }
    double gmax = 0.0, hmax = 0.0;
    for (int a = 0; a < 3; ++a) {
      gmax = std::max(gmax, std::abs(g[a]));
      hmax = std::max(hmax, std::abs(h2[a]));
    }
    for (int a = 0; a < 3; ++a) {
      worst1 = std::max(worst1, rel(g[a], fd_g[a], 1e-3 * gmax + 1e-12));
      worst2 = std::max(worst2, rel(h2[a], fd_h[a], 1e-3 * hmax + 1e-12));
    }

    // Parameter gradients of the full training loss.
    std::vector<SpaceTime> data_pts, colloc;
    for (int k = 0; k < 5; ++k) data_pts.push_back(random_point());
    for (int k = 0; k < 5; ++k) colloc.push_back(random_point());
    Eigen::VectorXd targets(5);
    for (int k = 0; k < 5; ++k) targets(k) = 2.0 * u01(rng) - 1.0;
    ad::Tape tape(p);
    record_loss(tape, p, net, data_pts, targets, colloc, inv_c2);
    const ad::ParamStore grads = tape.backward(1.0);
    const auto loss_at = [&](const NetParams& q) {
      ad::Tape t(q);
      return t.scalar(record_loss(t, q, net, data_pts, targets, colloc, inv_c2));
    };
    double err = 0.0, gnorm = 0.0;
    NetParams q = p;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const ad::ParamId id{i};
      for (Eigen::Index k = 0; k < p[id].size(); ++k) {
        const double base = p[id].data()[k];
        const double step = 1e-6 * std::max(1.0, std::abs(base));
        q[id].data()[k] = base + step;
        const double fp = loss_at(q);
        q[id].data()[k] = base - step;
        const double fm = loss_at(q);
        q[id].data()[k] = base;
        const double fd = (fp - fm) / (2 * step);
        err = std::max(err, std::abs(fd - grads[id].data()[k]));
        gnorm = std::max(gnorm, std::abs(grads[id].data()[k]));
      }
    }
    worst_bw = std::max(worst_bw, err / gnorm);
  }
  o.require(worst1 < kJetFirstTol, "first derivatives");
  o.require(worst2 < kJetSecondTol, "second derivatives");
  o.require(worst_bw < kBackwardTol, "parameter gradients");
  o.detail << "100 nets; max rel err first " << worst1 << " (< " << kJetFirstTol << "), second " << worst2
           << " (< " << kJetSecondTol << "), backward " << worst_bw << " (< " << kBackwardTol << ")";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion_2() {
  Outcome o;
  const Medium m;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<PlaneWavePulseSpec> specs{PlaneWavePulseSpec{io::SynthConfig::default_pulses()}};
  for (int s = 0; s < 4; ++s) {
    PlaneWavePulseSpec spec;
    for (int l = 0; l < 1 + s; ++l) {
      spec.pulses.push_back({2 * std::numbers::pi * u01(rng), 2.0 * u01(rng) - 1.0,
                             GaussianPulse{100.0 + 900.0 * u01(rng), 0.5e-3 + 2e-3 * u01(rng),
                                           0.005 + 0.03 * u01(rng)}});
    }
    specs.push_back(spec);
  }
  double worst = 0.0;
  for (const auto& spec : specs) {
    const PlaneWavePulseField field(spec, m);
    std::vector<SpaceTime> pts;
    for (int k = 0; k < 1000; ++k) pts.push_back({0.8 * u01(rng) - 0.4, 0.8 * u01(rng) - 0.4, 0.05 * u01(rng)});
    worst = std::max(worst, loss_pde(field, m, CollocationBatch{pts}));
  }
  o.require(worst < kResidualTol, "residual");
  o.detail << specs.size() << " fields x 1000 points; max loss_pde " << worst << " Pa/m^2 (< " << kResidualTol << ")";
  return o;
}

// ---------------------------------------------------------------- 3, 4, 9, 10

struct Run {
  std::string label;
  NetConfig net;
  TrainResult result;
  double seconds = 0.0;
  metrics::ReconReport report;
};

struct Desk {
  io::RunConfig cfg = io::default_run_config();
  cli::SynthResult synth;
  FieldGrid train;
  FieldGrid heldout;
  std::map<std::string, Run> runs;

  Desk() {
    synth = cli::synthesize(cfg.synth, cfg.medium, cfg.seed);
    train = synth.truth.subset(synth.train_indices);
    heldout = synth.truth.subset(synth.heldout_indices);
  }

  FieldGrid predict(const NetParams& p, const NetConfig& net, const FieldGrid& like) const {
    const NetworkField f(p, net);
    FieldGrid est = like;
    std::vector<SpaceTime> pts(static_cast<std::size_t>(like.samples()));
    for (std::size_t m = 0; m < like.position_count(); ++m) {
      for (Eigen::Index n = 0; n < like.samples(); ++n) {
        pts[static_cast<std::size_t>(n)] = {like.positions[m][0], like.positions[m][1], like.time(n)};
      }
      est.pressure.col(static_cast<Eigen::Index>(m)) = f.evaluate(pts);
    }
    return est;
  }

  // Trains once per label and caches the run.
  const Run& run(const std::string& label, NetKind kind, bool use_pde, const FieldGrid& data,
                 const FieldGrid& eval, TrainConfig tc) {
    auto it = runs.find(label);
    if (it != runs.end()) return it->second;
    Run r;
    r.label = label;
    NetConfig base = cfg.network;
    base.kind = kind;
    r.net = fit_net_config(base, data, grid_domain(synth.truth));
    tc.use_pde = use_pde;
    const auto t0 = std::chrono::steady_clock::now();
    std::fprintf(stderr, "training %s (%lld iterations)\n", label.c_str(), static_cast<long long>(tc.iterations));
    r.result = wavefield::train(TrainState{init_siren(r.net, cfg.seed), std::nullopt, 0}, r.net, tc, data,
                                cfg.medium, &eval);
    r.seconds = seconds_since(t0);
    const FieldGrid est = predict(r.result.params, r.net, eval);
    r.report = metrics::global_metrics(eval, est);
    r.report.method = label;
    r.report.config_hash = io::config_hash(cfg);
    r.report.windows = metrics::snapshot_metrics(eval, est, cfg.evaluate.window, cfg.evaluate.hop);
    r.report.positions = metrics::distance_study(eval, est, data.positions, cfg.evaluate.axis);
    fs::create_directories(kReportDir);
    io::write_train_log(r.result.log, kReportDir / (label + "_train_log.csv"));
    io::write_snapshot_csv(r.report, kReportDir / (label + "_snapshots.csv"));
    io::write_positions_csv(r.report, kReportDir / (label + "_positions.csv"));
    std::fprintf(stderr, "  %s: corr %.4f nmse %.2f dB, %.0f s%s\n", label.c_str(), r.report.correlation,
                 r.report.nmse_db, r.seconds, r.result.diverged ? " (diverged)" : "");
    return runs.emplace(label, std::move(r)).first->second;
  }

  TrainConfig budget() const {
    TrainConfig tc = cfg.train;
    tc.log_every = 10;
    return tc;
  }

  const Run& pinn() { return run("mmlp-pinn", NetKind::kModifiedMlp, true, train, heldout, budget()); }
};

Desk& desk() {
  static Desk d;
  return d;
}

Outcome criterion_3() {
  Outcome o;
  const Run& r = desk().pinn();
  o.require(!r.result.diverged, "training diverged");
  o.require(r.report.correlation >= kMinCorrelation, "correlation");
  o.require(r.report.nmse_db <= kMaxNmseDb, "nmse");
  o.detail << desk().train.position_count() << " training / " << desk().heldout.position_count()
           << " held-out positions, " << r.result.iteration << " iterations in " << std::lround(r.seconds)
           << " s; held-out corr " << r.report.correlation << " (>= " << kMinCorrelation << "), NMSE "
           << r.report.nmse_db << " dB (<= " << kMaxNmseDb << ")";
  return o;
}

Outcome criterion_4() {
  Outcome o;
  Desk& d = desk();
  const Run& pinn = d.pinn();
  const Run& mmlp = d.run("mmlp", NetKind::kModifiedMlp, false, d.train, d.heldout, d.budget());
  const Run& mlp = d.run("mlp-pinn", NetKind::kMlp, true, d.train, d.heldout, d.budget());
  io::write_summary_csv({mmlp.report, pinn.report, mlp.report}, kReportDir / "model_comparison.csv");
  o.require(pinn.report.correlation >= mmlp.report.correlation, "mMLP-PINN below mMLP");
  o.detail << "held-out corr / NMSE: mmlp " << mmlp.report.correlation << " / " << mmlp.report.nmse_db
           << " dB, mmlp-pinn " << pinn.report.correlation << " / " << pinn.report.nmse_db << " dB, mlp-pinn "
           << mlp.report.correlation << " / " << mlp.report.nmse_db << " dB; report "
           << (kReportDir / "model_comparison.csv").string();
  return o;
}

Outcome criterion_9() {
  Outcome o;
  const Run& r = desk().pinn();
  const TrainLog& log = r.result.log;
  o.require(log.size() >= 10, "log too short");
  bool finite = true;
  for (const auto& row : log) finite = finite && std::isfinite(row.eps_data) && std::isfinite(row.eps_pde);
  o.require(finite, "eps trajectories not finite");
  const std::size_t k = std::min<std::size_t>(5, log.size());
  double head = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    head += log[i].loss_data / static_cast<double>(k);
    tail += log[log.size() - 1 - i].loss_data / static_cast<double>(k);
  }
  const double drop = 1.0 - tail / head;
  o.require(drop >= kMaeDrop, "data MAE drop");

  // dL/ds = 1 - l exp(-2 s): analytic, finite differences and the tape agree.
  double worst = 0.0, worst_fd = 0.0;
  for (const auto& [ld, lf, ed, ef] : std::vector<std::array<double, 4>>{{0.3, 40.0, 1.0, 10.0},
                                                                         {0.01, 0.5, 0.2, 30.0},
                                                                         {2.0, 1e3, 3.0, 0.7}}) {
    const AdaptiveWeights w = AdaptiveWeights::from_scales(ed, ef);
    const AdaptiveWeights g = total_loss_gradient(ld, lf, w);
    const double h = 1e-6;
    AdaptiveWeights a = w, b = w;
    a.s_data += h;
    b.s_data -= h;
    const double fd_d = (total_loss(ld, lf, a) - total_loss(ld, lf, b)) / (2 * h);
    a = w;
    b = w;
    a.s_pde += h;
    b.s_pde -= h;
    const double fd_f = (total_loss(ld, lf, a) - total_loss(ld, lf, b)) / (2 * h);
    const double an_d = 1 - ld / (ed * ed), an_f = 1 - lf / (ef * ef);
    const auto r = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    worst = std::max({worst, r(g.s_data, an_d), r(g.s_pde, an_f)});
    worst_fd = std::max({worst_fd, r(fd_d, an_d), r(fd_f, an_f)});
  }
  ad::ParamStore p;
  p.add("w", Eigen::MatrixXd::Constant(1, 3, 0.25));
  p.add("b", Eigen::MatrixXd::Constant(1, 1, -0.1));
  set_adaptive_weights(p, AdaptiveWeights::from_scales(0.6, 5.0));
  ad::Tape tape(p);
  ad::JetBatch x(3, 3, false);
  x.value() << 1.0, 0.0, 2.0, -1.0, 0.5, 0.3, 0.2, 0.1, -0.7;
  const ad::NodeId l = tape.mean_abs_error(tape.affine(p.id("w"), p.id("b"), tape.input(x)), Eigen::Vector3d(1, 2, 3));
  tape.log_scaled(l, p.id(kLogScaleData));
  const double tape_err = std::abs(tape.backward(1.0)[kLogScaleData](0, 0) - (1 - tape.scalar(l) / 0.36));
  worst = std::max(worst, tape_err);
  o.require(worst < 1e-10, "adaptive weight gradient");
  o.require(worst_fd < 1e-6, "adaptive weight gradient vs finite differences");

  int rises = 0;
  for (std::size_t i = 1; i < log.size(); ++i) rises += log[i].eps_pde > log[i - 1].eps_pde;
  o.detail << log.size() << " log rows, eps finite; data MAE " << head << " -> " << tail << " (drop "
           << 100.0 * drop << "%, >= 50%); eps_pde " << log.front().eps_pde << " -> " << log.back().eps_pde
           << ", rising in " << rises << "/" << log.size() - 1 << " intervals (reported only); gradient rel err vs closed form "
           << worst << " (< 1e-10), finite differences vs closed form " << worst_fd << " (< 1e-6)";
  return o;
}

Outcome criterion_10() {
  Outcome o;
  Desk& d = desk();
  const auto& s = d.cfg.synth;
  // 8 x 8 receivers at twice the grid spacing, centered in the aperture.
  std::vector<std::size_t> inner;
  const int first = (s.nx - 15) / 2;
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 8; ++i) inner.push_back(static_cast<std::size_t>((first + 2 * j) * s.nx + first + 2 * i));
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < d.synth.truth.position_count(); ++i) {
    if (std::find(inner.begin(), inner.end(), i) == inner.end()) rest.push_back(i);
  }
  const FieldGrid sub = d.synth.truth.subset(inner);
  const FieldGrid eval = d.synth.truth.subset(rest);
  const Run& r = d.run("mmlp-pinn-8x8", NetKind::kModifiedMlp, true, sub, eval, d.budget());

  const Box3 ap = grid_domain(sub);
  std::vector<metrics::PositionRow> outside;
  for (const auto& row : r.report.positions) {
    const bool in = row.position[0] >= ap.lo[0] - 1e-9 && row.position[0] <= ap.hi[0] + 1e-9 &&
                    row.position[1] >= ap.lo[1] - 1e-9 && row.position[1] <= ap.hi[1] + 1e-9;
    if (!in) outside.push_back(row);
  }
  const auto bins = metrics::bin_by_distance(outside, 0.0, d.cfg.evaluate.bin_width);
  io::write_distance_bins_csv(r.label, bins, kReportDir / "extrapolation_bins.csv");
  std::vector<double> centers, corr;
  for (const auto& b : bins) {
    centers.push_back(0.5 * (b.lo + b.hi));
    corr.push_back(b.mean_correlation);
  }
  o.require(bins.size() >= 3, "too few distance bins");
  const double rho = bins.size() >= 2 ? metrics::spearman(centers, corr) : std::nan("");
  o.require(rho < 0.0, "Spearman not negative");
  o.detail << outside.size() << " positions outside the 8x8 aperture in " << bins.size() << " bins; mean corr";
  for (const auto& b : bins) o.detail << " [" << b.lo << "," << b.hi << "):" << b.mean_correlation;
  o.detail << "; Spearman " << rho << " (< 0)";
  return o;
}

// ---------------------------------------------------------------- 5

Outcome criterion_5() {
  Outcome o;
  const Medium m;
  const double dir = 1.1;
  const PlaneWavePulseField f(PlaneWavePulseSpec{{{dir, 1.5, GaussianPulse{400.0, 1e-3, 8e-3}}}}, m);
  std::vector<double> times;
  for (int n = 0; n < 480; ++n) times.push_back(n / 16000.0);
  double worst_l2 = 0.0, worst_deg = 0.0;
  int checked = 0;
  for (const Vec2& pos : {Vec2{0.0, 0.0}, Vec2{0.3, -0.2}, Vec2{-0.35, 0.4}}) {
    const auto u = particle_velocity(f, m, pos, times);
    std::vector<double> p;
    for (double t : times) p.push_back(f.query({pos[0], pos[1], t}).value);
    const double peak = *std::max_element(p.begin(), p.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n < times.size(); ++n) {
      const double ux = p[n] / (m.rho * m.c) * std::cos(dir), uy = p[n] / (m.rho * m.c) * std::sin(dir);
      num += std::pow(u[n][0] - ux, 2) + std::pow(u[n][1] - uy, 2);
      den += ux * ux + uy * uy;
      if (std::abs(p[n]) > 0.01 * std::abs(peak)) {
        const Vec2 i = intensity(p[n], u[n]);
        const double cosang = (i[0] * std::cos(dir) + i[1] * std::sin(dir)) / std::hypot(i[0], i[1]);
        worst_deg = std::max(worst_deg, std::acos(std::clamp(cosang, -1.0, 1.0)) * 180.0 / std::numbers::pi);
        ++checked;
      }
    }
    worst_l2 = std::max(worst_l2, std::sqrt(num / den));
  }
  o.require(worst_l2 < kImpedanceTol, "impedance relation");
  o.require(worst_deg < kIntensityDegTol, "intensity direction");
  o.detail << "3 positions, fs 16 kHz; velocity rel L2 err " << worst_l2 << " (< " << kImpedanceTol
           << "), max intensity angle " << worst_deg << " deg over " << checked << " samples (< " << kIntensityDegTol << ")";
  return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion_6() {
  Outcome o;
  const Medium m;
  const auto dirs = baselines::uniform_directions(64);
  PlaneWavePulseSpec spec;
  const int pick[5] = {3, 17, 30, 41, 55};
  for (int i = 0; i < 5; ++i) {
    spec.pulses.push_back({dirs[static_cast<std::size_t>(pick[i])], 1.0 + 0.2 * i, GaussianPulse{500.0, 1e-3, 0.012 + 0.006 * i}});
  }
  GridRequest req;
  req.positions = rectangular_positions(30, 30, -0.4, -0.4, 0.8 / 29, 0.8 / 29);
  req.fs = 8000.0;
  req.samples = 400;
  const FieldGrid truth = planewave_pulse_field(spec, m, req).grid;
  const auto tr = strided_subset(30, 30, 3, 1);
  std::vector<std::size_t> ho;
  for (std::size_t i = 0; i < truth.position_count(); ++i) {
    if (std::find(tr.begin(), tr.end(), i) == tr.end()) ho.push_back(i);
  }
  const FieldGrid heldout = truth.subset(ho);
  baselines::SparseSolverConfig cfg;
  cfg.lambda = 1e-3;
  cfg.max_iterations = 2000;
  cfg.tolerance = 1e-10;
  const auto sol = baselines::pw_solve(truth.subset(tr), dirs, 30.0, 1000.0, cfg, m);
  const FieldGrid est = baselines::pw_reconstruct(sol, heldout.positions, m);
  const double pw_nmse = metrics::nmse_db(flat(heldout.pressure), flat(est.pressure));
  o.require(pw_nmse < kPwNmseDb, "plane-wave NMSE");

  // One spherical-wave atom through the time-domain model.
  const auto rec = rectangular_positions(6, 6, -0.25, -0.25, 0.1, 0.1);
  const auto src = baselines::default_virtual_sources(rec, 64);
  const baselines::SphericalDictionary dict(src, rec, 8000.0, 128, 81, m);
  Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(dict.coefficient_length(), 64);
  const Eigen::Index tap = dict.offset() + 20;
  alpha(tap, 11) = 0.7;
  FieldGrid meas;
  meas.positions = rec;
  meas.fs = 8000.0;
  meas.pressure = dict.apply(alpha);
  baselines::SparseSolverConfig td;
  td.lambda = 1e-3;
  td.max_iterations = 5000;
  td.tolerance = 1e-10;
  const auto back = baselines::td_sparse_solve(dict, meas, td);
  const double total = back.alpha.squaredNorm();
  const double off = total - back.alpha(tap, 11) * back.alpha(tap, 11);
  const double off_frac = total > 0.0 ? off / total : 1.0;
  o.require(off_frac < kOffSupportTol, "off-support energy");
  o.detail << "PW LASSO held-out NMSE " << pw_nmse << " dB (< " << kPwNmseDb << "); TD atom off-support energy "
           << off_frac << " (< " << kOffSupportTol << "), amplitude " << back.alpha(tap, 11) << " of 0.7, "
           << back.report.iterations << " iterations";
  return o;
}

// ---------------------------------------------------------------- 7

// Image positions by explicit mirroring, shortest reflection path per image.
std::map<std::array<long long, 3>, std::pair<Vec3, double>> enumerate_images(const RoomSpec& room, const Vec3& s) {
  auto key = [](const Vec3& p) {
    return std::array<long long, 3>{std::llround(p[0] * 1e9), std::llround(p[1] * 1e9), std::llround(p[2] * 1e9)};
  };
  std::map<std::array<long long, 3>, std::pair<Vec3, double>> seen;
  std::vector<std::pair<Vec3, double>> frontier{{s, 1.0}};
  seen[key(s)] = {s, 1.0};
  for (int depth = 1; depth <= room.max_order; ++depth) {
    std::vector<std::pair<Vec3, double>> next;
    for (const auto& [p, gain] : frontier) {
      for (int wall = 0; wall < 6; ++wall) {
        Vec3 q = p;
        const int a = wall / 2;
        q[a] = wall % 2 == 0 ? -p[a] : 2 * room.dimensions[a] - p[a];
        if (seen.emplace(key(q), std::make_pair(q, gain * room.beta[wall])).second) {
          next.emplace_back(q, gain * room.beta[wall]);
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

Outcome criterion_7() {
  Outcome o;
  const Medium m;
  RoomSpec room;  // 6.12 x 5.77 x 3.07 m
  room.max_order = 3;
  const double fs = 8000.0;
  const Vec3 source{1.5, 1.2, 1.1};
  int isolated = 0, matched_sets = 0;
  double worst = 0.0;
  for (const Vec3& r : {Vec3{3.2, 2.9, 1.5}, Vec3{4.9, 1.1, 0.8}, Vec3{0.6, 4.4, 2.3}}) {
    const auto ref = enumerate_images(room, source);
    const auto got = image_sources(room, source, r);
    std::set<std::array<long long, 3>> got_keys;
    double dist_err = 0.0;
    for (const auto& img : got) {
      const std::array<long long, 3> k{std::llround(img.position[0] * 1e9), std::llround(img.position[1] * 1e9),
                                       std::llround(img.position[2] * 1e9)};
      got_keys.insert(k);
      const auto it = ref.find(k);
      if (it == ref.end()) {
        dist_err = INFINITY;
        continue;
      }
      const Vec3& q = it->second.first;
      dist_err = std::max(dist_err, std::abs(img.distance - std::hypot(q[0] - r[0], q[1] - r[1], q[2] - r[2])));
    }
    matched_sets += got.size() == ref.size() && got_keys.size() == ref.size() && dist_err < 1e-9;

    const Eigen::VectorXd h = image_source_rir(room, SourceSpec{source, {1.0}}, r, fs, 0.15, m);
    std::vector<std::pair<double, double>> arrivals;  // (sample, amplitude)
    for (const auto& [k, v] : ref) {
      const Vec3& q = v.first;
      const double d = std::hypot(q[0] - r[0], q[1] - r[1], q[2] - r[2]);
      arrivals.emplace_back(d / m.c * fs, v.second / (4 * std::numbers::pi * d));
    }
    for (const auto& [n, amp] : arrivals) {
      bool alone = true;
      for (const auto& [n2, amp2] : arrivals) {
        if (n2 != n && std::abs(n2 - n) < 12.0) alone = false;
      }
      if (!alone || n + 3 >= static_cast<double>(h.size())) continue;
      const auto lo = static_cast<Eigen::Index>(std::floor(n)) - 3;
      Eigen::Index peak = 0;
      h.segment(lo, 8).cwiseAbs().maxCoeff(&peak);
      worst = std::max(worst, std::abs(static_cast<double>(lo + peak) - n));
      ++isolated;
    }
  }
  o.require(matched_sets == 3, "image set differs from enumeration");
  o.require(isolated > 0, "no isolated arrivals");
  o.require(worst <= kArrivalTolSamples, "arrival time");
  o.detail << "3 receivers, 63 images each match brute-force enumeration: " << (matched_sets == 3 ? "yes" : "no")
           << "; " << isolated << " isolated arrivals, max peak offset " << worst << " samples (<= "
           << kArrivalTolSamples << ")";
  return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion_8() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  std::vector<double> x(500), y(500);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = g(rng);
    y[i] = 0.6 * x[i] + 0.8 * g(rng);
  }
  const double r = metrics::pearson(x, y);
  std::vector<double> xa(x.size()), yb(y.size()), neg(x.size()), off(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xa[i] = 3.5 * x[i] - 2.0;
    yb[i] = 0.01 * y[i] + 7.0;
    neg[i] = -x[i];
    off[i] = x[i] + 0.3;
  }
  const double affine = std::abs(metrics::pearson(xa, yb) - r);
  const double self = std::abs(metrics::pearson(x, x) - 1.0);
  const double anti = std::abs(metrics::pearson(x, neg) + 1.0);
  const double offset = std::abs(metrics::rmse_db(x, off) - 10.0 * std::log10(0.3));
  o.require(affine < 1e-12, "affine invariance");
  o.require(self < 1e-12, "rho(x, x)");
  o.require(anti < 1e-12, "rho(x, -x)");
  o.require(offset < 1e-12, "rmse_db offset identity");

  // One window spanning the slab reproduces the global numbers.
  FieldGrid t;
  t.positions = rectangular_positions(4, 3, 0.0, 0.0, 0.1, 0.1);
  t.fs = 1000.0;
  t.pressure.resize(64, 12);
  FieldGrid e = t;
  for (Eigen::Index k = 0; k < t.pressure.size(); ++k) {
    t.pressure.data()[k] = g(rng);
    e.pressure.data()[k] = t.pressure.data()[k] + 0.3 * g(rng);
  }
  const auto global = metrics::global_metrics(t, e);
  const auto windows = metrics::snapshot_metrics(t, e, t.duration(), INFINITY);
  const bool consistent = windows.size() == 1 && std::abs(windows[0].correlation - global.correlation) < 1e-12 &&
                          std::abs(windows[0].nmse_db - global.nmse_db) < 1e-10;
  o.require(consistent, "snapshot/global consistency");
  o.detail << "affine " << affine << ", rho(x,x)-1 " << self << ", rho(x,-x)+1 " << anti << ", offset identity "
           << offset << ", single-window vs global " << (consistent ? "equal" : "different");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::function<Outcome()>> criteria{
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4}, {5, criterion_5},
      {6, criterion_6}, {7, criterion_7}, {8, criterion_8}, {9, criterion_9}, {10, criterion_10}};
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  if (wanted.empty()) {
    for (const auto& [k, f] : criteria) wanted.push_back(k);
  }
  int failed = 0;
  for (int k : wanted) {
    const auto it = criteria.find(k);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", k);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("criterion %d: %s (%.1f s) %s\n", k, o.pass ? "PASS" : "FAIL", seconds_since(t0), o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
