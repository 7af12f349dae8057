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

#include "wavefield/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wavefield/acoustics/oracle.hpp"
#include "wavefield/baselines/baselines.hpp"
#include "wavefield/binary_io.hpp"
#include "wavefield/checkpoint.hpp"
#include "wavefield/errors.hpp"
#include "wavefield/io/csv.hpp"
#include "wavefield/io/grid_file.hpp"
#include "wavefield/metrics.hpp"
#include "wavefield/random.hpp"
#include "wavefield/training.hpp"

namespace wavefield::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kSplitStream = 0x5b17;
constexpr std::uint64_t kInitStream = 0x1417;

std::uint32_t file_crc(const fs::path& path) {
  const auto bytes = io::read_file(path);
  return io::crc32(bytes);
}

class Manifest {
 public:
  Manifest(std::string command, const io::RunConfig& config, std::vector<std::string> argv)
      : doc_{{"tool", "wavefield"},
             {"version", kVersion},
             {"command", std::move(command)},
             {"argv", std::move(argv)},
             {"seed", config.seed},
             {"config_hash", io::config_hash(config)},
             {"config", json::parse(io::dump_run_config(config))},
             {"inputs", json::array()},
             {"outputs", json::array()}} {}

  void input(const fs::path& path) {
    char crc[9];
    std::snprintf(crc, sizeof crc, "%08x", file_crc(path));
    doc_["inputs"].push_back({{"path", path.string()}, {"crc32", crc}});
  }
  void output(const fs::path& path) { doc_["outputs"].push_back(path.string()); }
  json& operator[](const char* key) { return doc_[key]; }

  void write(const fs::path& dir) const {
    const fs::path path = dir / (doc_["command"].get<std::string>() + "_manifest.json");
    std::ofstream f(path);
    f << doc_.dump(2) << '\n';
    if (!f) throw IoError("cannot write " + path.string());
  }

 private:
  json doc_;
};

std::vector<double> sampled_pulse(const GaussianPulse& pulse, double fs) {
  if (pulse.center_frequency == 0.0) return {1.0};
  const auto n = static_cast<std::size_t>(std::ceil((pulse.delay + 6.0 * pulse.sigma) * fs)) + 1;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = pulse.value(static_cast<double>(i) / fs);
  return w;
}

Box3 union_box(const Box3& a, const Box3& b) {
  Box3 out = a;
  for (int i = 0; i < 3; ++i) {
    out.lo[i] = std::min(a.lo[i], b.lo[i]);
    out.hi[i] = std::max(a.hi[i], b.hi[i]);
  }
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

std::vector<Vec3> read_positions_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<Vec3> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    Vec3 p{};
    if (!(ss >> p[0] >> p[1])) throw FormatError(path.string() + ": expected x,y[,z] per line");
    if (!(ss >> p[2])) p[2] = 0.0;
    out.push_back(p);
  }
  if (out.empty()) throw FormatError(path.string() + ": no positions");
  return out;
}

// Options shared by every subcommand.
struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = ".";

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config_path, "JSON run configuration");
    app->add_option("--set", overrides, "override a config key, e.g. --set train.iterations=500");
    app->add_option("-o,--out-dir", out_dir, "output directory");
  }

  // Invalid keys or values are usage errors; an unreadable file is not.
  io::RunConfig load() const {
    try {
      const io::RunConfig c =
          config_path.empty() ? io::default_run_config() : io::load_run_config(config_path);
      return io::apply_overrides(c, overrides);
    } catch (const ArgumentError& e) {
      throw UsageError(e.what());
    } catch (const FormatError& e) {
      throw UsageError(e.what());
    }
  }
};

int cmd_synth(const io::RunConfig& cfg, const fs::path& dir, Manifest& manifest, std::ostream& out) {
  ensure_dir(dir);
  const SynthResult s = synthesize(cfg.synth, cfg.medium, cfg.seed);
  const FieldGrid train = s.truth.subset(s.train_indices);
  const FieldGrid heldout = s.truth.subset(s.heldout_indices);
  for (const auto& [name, grid] : {std::pair<const char*, const FieldGrid*>{"truth.wfgd", &s.truth},
                                  {"train.wfgd", &train},
                                  {"heldout.wfgd", &heldout}}) {
    io::write_grid(*grid, dir / name);
    manifest.output(dir / name);
  }
  manifest["train_indices"] = s.train_indices;
  out << "synth: " << s.truth.position_count() << " receivers x " << s.truth.samples() << " samples, "
      << s.train_indices.size() << " for training, " << s.heldout_indices.size() << " held out\n";
  return 0;
}

struct TrainArgs {
  std::string data, validation, domain, resume;
};

int cmd_train(const io::RunConfig& cfg, const TrainArgs& a, const fs::path& dir, Manifest& manifest,
              std::ostream& out, std::ostream& err) {
  ensure_dir(dir);
  const FieldGrid data = io::read_grid(a.data);
  manifest.input(a.data);
  std::optional<FieldGrid> validation;
  if (!a.validation.empty()) {
    validation = io::read_grid(a.validation);
    manifest.input(a.validation);
  }
  NetConfig net;
  TrainState state;
  std::vector<TrainLogRow> previous;
  if (!a.resume.empty()) {
    const Checkpoint ck = load_checkpoint(a.resume);
    manifest.input(a.resume);
    net = ck.config;
    state = TrainState::from_checkpoint(ck);
    if (fs::exists(dir / "train_log.csv")) previous = io::read_train_log(dir / "train_log.csv");
    std::erase_if(previous, [&](const TrainLogRow& r) { return r.iteration > ck.iteration; });
  } else {
    Box3 domain = grid_domain(data);
    if (validation) domain = union_box(domain, grid_domain(*validation));
    if (!a.domain.empty()) {
      domain = union_box(domain, grid_domain(io::read_grid(a.domain)));
      manifest.input(a.domain);
    }
    net = fit_net_config(cfg.network, data, domain);
    state.params = init_siren(net, mix_seed(cfg.seed, kInitStream));
  }
  TrainConfig tc = cfg.train;
  tc.checkpoint_path = dir / "checkpoint.wfpn";
  const TrainResult result = train(std::move(state), net, tc, data, cfg.medium,
                                   validation ? &*validation : nullptr, [&](const TrainLogRow& r) {
                                     out << "iter " << r.iteration << "  data " << r.loss_data
                                         << "  pde " << r.loss_pde << "  eps_d " << r.eps_data
                                         << "  eps_f " << r.eps_pde << "  val " << r.validation_mae
                                         << '\n';
                                   });
  previous.insert(previous.end(), result.log.begin(), result.log.end());
  io::write_train_log(previous, dir / "train_log.csv");
  manifest.output(tc.checkpoint_path);
  manifest.output(dir / "train_log.csv");
  manifest["final_iteration"] = result.iteration;
  manifest["diverged"] = result.diverged;
  if (result.diverged) {
    err << "error: " << result.message << "; last good parameters saved to " << tc.checkpoint_path << '\n';
    return 1;
  }
  return 0;
}

struct ReconArgs {
  std::string checkpoint, grid, positions;
  int nx = 0, ny = 0;
  double x0 = 0.0, y0 = 0.0, dx = 0.0, dy = 0.0, z = 0.0;
  double fs = 0.0, t0 = std::numeric_limits<double>::quiet_NaN();
  std::int64_t samples = 0;
  bool velocity = false;
};

int cmd_reconstruct(const io::RunConfig& cfg, const ReconArgs& a, const fs::path& dir,
                    Manifest& manifest, std::ostream& out) {
  ensure_dir(dir);
  const Checkpoint ck = load_checkpoint(a.checkpoint);
  manifest.input(a.checkpoint);
  GridRequest req;
  req.fs = 8000.0;
  req.t0 = ck.config.input_bounds.lo[2];
  req.samples = static_cast<Eigen::Index>(
      std::floor((ck.config.input_bounds.hi[2] - ck.config.input_bounds.lo[2]) * req.fs + 1e-9)) + 1;
  const int sources = (!a.grid.empty()) + (!a.positions.empty()) + (a.nx > 0 || a.ny > 0);
  if (sources != 1) throw UsageError("give exactly one of --grid, --positions or --nx/--ny");
  if (!a.grid.empty()) {
    const FieldGrid g = io::read_grid(a.grid);
    manifest.input(a.grid);
    req.positions = g.positions;
    req.fs = g.fs;
    req.t0 = g.t0;
    req.samples = g.samples();
  } else if (!a.positions.empty()) {
    req.positions = read_positions_csv(a.positions);
    manifest.input(a.positions);
  } else {
    if (a.nx < 1 || a.ny < 1) throw UsageError("--nx and --ny must both be >= 1");
    req.positions = rectangular_positions(a.nx, a.ny, a.x0, a.y0, a.dx, a.dy, a.z);
  }
  if (a.fs > 0.0) req.fs = a.fs;
  if (std::isfinite(a.t0)) req.t0 = a.t0;
  if (a.samples > 0) req.samples = a.samples;
  const NetworkField field(ck.params, ck.config);
  const FieldGrid p = sample_field(field, req);
  io::write_grid(p, dir / "reconstruction.wfgd");
  manifest.output(dir / "reconstruction.wfgd");
  if (a.velocity) {
    std::vector<double> times(static_cast<std::size_t>(p.samples()));
    for (Eigen::Index n = 0; n < p.samples(); ++n) times[static_cast<std::size_t>(n)] = p.time(n);
    FieldGrid ux = p, uy = p, ix = p, iy = p;
    for (std::size_t m = 0; m < p.positions.size(); ++m) {
      const auto u = particle_velocity(field, cfg.medium, {p.positions[m][0], p.positions[m][1]}, times);
      const auto col = static_cast<Eigen::Index>(m);
      for (Eigen::Index n = 0; n < p.samples(); ++n) {
        const Vec2& v = u[static_cast<std::size_t>(n)];
        const Vec2 i = intensity(p.pressure(n, col), v);
        ux.pressure(n, col) = v[0];
        uy.pressure(n, col) = v[1];
        ix.pressure(n, col) = i[0];
        iy.pressure(n, col) = i[1];
      }
    }
    for (const auto& [name, grid] : {std::pair<const char*, const FieldGrid*>{"velocity_x.wfgd", &ux},
                                    {"velocity_y.wfgd", &uy},
                                    {"intensity_x.wfgd", &ix},
                                    {"intensity_y.wfgd", &iy}}) {
      io::write_grid(*grid, dir / name);
      manifest.output(dir / name);
    }
  }
  out << "reconstruct: " << p.position_count() << " positions x " << p.samples() << " samples\n";
  return 0;
}

struct BaselineArgs {
  std::string method, data, targets;
};

int cmd_baseline(io::RunConfig cfg, const BaselineArgs& a, const fs::path& dir, Manifest& manifest,
                 std::ostream& out, std::ostream& err) {
  if (!a.method.empty()) cfg.baseline.method = io::baseline_method_from_string(a.method);
  ensure_dir(dir);
  const FieldGrid data = io::read_grid(a.data);
  manifest.input(a.data);
  const FieldGrid targets = io::read_grid(a.targets);
  manifest.input(a.targets);
  const auto& b = cfg.baseline;
  FieldGrid rec;
  std::vector<baselines::SolveReport> reports;
  manifest["method"] = io::to_string(b.method);
  if (b.method == io::BaselineMethod::kPwRls) {
    const auto dirs = baselines::uniform_directions(b.directions);
    const auto sol = baselines::pw_solve(data, dirs, b.f_lo, b.f_hi, b.solver, cfg.medium);
    double imag = 0.0;
    rec = baselines::pw_reconstruct(sol, targets.positions, cfg.medium, &imag);
    io::write_pw_coefficients(sol, dir / "pw_coefficients.csv");
    manifest.output(dir / "pw_coefficients.csv");
    manifest["max_imaginary_residue"] = imag;
    reports = sol.reports;
    if (!b.sweep_lambdas.empty()) {
      const auto rows = baselines::pw_lambda_sweep(data, dirs, b.f_lo, b.f_hi, b.solver, b.sweep_lambdas, cfg.medium);
      io::write_lambda_sweep(rows, dir / "lambda_sweep.csv");
      manifest.output(dir / "lambda_sweep.csv");
    }
  } else {
    if (!b.sweep_lambdas.empty()) err << "warning: lambda sweep is only available for pw-rls\n";
    const auto sources = baselines::default_virtual_sources(data.positions, b.sources);
    const auto dict = baselines::build_spherical_dictionary(sources, data.positions, data.fs,
                                                            data.samples(), b.filter_len, cfg.medium);
    const auto sol = baselines::td_sparse_solve(dict, data, b.solver);
    rec = baselines::td_reconstruct(dict, sol.alpha, targets.positions, data.t0);
    io::write_td_coefficients(dict, sol.alpha, dir / "td_coefficients.csv");
    manifest.output(dir / "td_coefficients.csv");
    reports.push_back(sol.report);
  }
  int worst_iterations = 0;
  std::size_t unconverged = 0;
  double objective = 0.0;
  for (const auto& r : reports) {
    worst_iterations = std::max(worst_iterations, r.iterations);
    unconverged += r.converged ? 0 : 1;
    objective += r.objective;
  }
  manifest["solver"] = {{"kind", baselines::to_string(b.solver.kind)},
                        {"problems", reports.size()},
                        {"unconverged", unconverged},
                        {"max_iterations_used", worst_iterations},
                        {"objective", objective}};
  if (unconverged > 0) {
    err << "warning: " << unconverged << " of " << reports.size()
        << " solves stopped at max_iterations before reaching the tolerance\n";
  }
  io::write_grid(rec, dir / "baseline.wfgd");
  manifest.output(dir / "baseline.wfgd");
  out << "baseline " << io::to_string(b.method) << ": " << rec.position_count() << " positions, objective "
      << objective << '\n';
  return 0;
}

struct EvalArgs {
  std::string truth, training;
  std::vector<std::string> estimates, labels;
};

int cmd_evaluate(const io::RunConfig& cfg, const EvalArgs& a, const fs::path& dir, Manifest& manifest,
                 std::ostream& out) {
  if (!a.labels.empty() && a.labels.size() != a.estimates.size()) {
    throw UsageError("give one --label per --est");
  }
  ensure_dir(dir);
  const FieldGrid truth = io::read_grid(a.truth);
  manifest.input(a.truth);
  std::vector<Vec3> training;
  if (!a.training.empty()) {
    training = io::read_grid(a.training).positions;
    manifest.input(a.training);
  }
  const std::string hash = io::config_hash(cfg);
  std::vector<metrics::ReconReport> reports;
  for (std::size_t i = 0; i < a.estimates.size(); ++i) {
    const FieldGrid est = io::read_grid(a.estimates[i]);
    manifest.input(a.estimates[i]);
    const std::string label = a.labels.empty() ? fs::path(a.estimates[i]).stem().string() : a.labels[i];
    metrics::ReconReport r = metrics::global_metrics(truth, est);
    r.method = label;
    r.config_hash = hash;
    r.windows = metrics::snapshot_metrics(truth, est, cfg.evaluate.window, cfg.evaluate.hop);
    r.positions = metrics::distance_study(truth, est, training, cfg.evaluate.axis);
    io::write_snapshot_csv(r, dir / (label + "_snapshots.csv"));
    io::write_positions_csv(r, dir / (label + "_positions.csv"));
    manifest.output(dir / (label + "_snapshots.csv"));
    manifest.output(dir / (label + "_positions.csv"));
    if (!training.empty()) {
      const auto bins = metrics::bin_by_distance(r.positions, 0.0, cfg.evaluate.bin_width);
      io::write_distance_bins_csv(label, bins, dir / (label + "_distance_bins.csv"));
      manifest.output(dir / (label + "_distance_bins.csv"));
    }
    out << label << ": correlation " << r.correlation << ", NMSE " << r.nmse_db << " dB\n";
    reports.push_back(std::move(r));
  }
  io::write_summary_csv(reports, dir / "summary.csv");
  manifest.output(dir / "summary.csv");
  return 0;
}

struct ExportArgs {
  std::string grid, checkpoint, out;
};

int cmd_export(const ExportArgs& a, Manifest& manifest, std::ostream& out) {
  if ((a.grid.empty()) == (a.checkpoint.empty())) throw UsageError("give exactly one of --grid or --checkpoint");
  if (a.out.empty()) throw UsageError("--out is required");
  if (!a.grid.empty()) {
    io::write_grid_csv(io::read_grid(a.grid), a.out);
    manifest.input(a.grid);
  } else {
    const Checkpoint ck = load_checkpoint(a.checkpoint);
    manifest.input(a.checkpoint);
    json tensors = json::object();
    for (std::size_t i = 0; i < ck.params.size(); ++i) {
      const ad::ParamId id{i};
      const Eigen::MatrixXd& t = ck.params[id];
      json rows = json::array();
      for (Eigen::Index r = 0; r < t.rows(); ++r) {
        std::vector<double> row(static_cast<std::size_t>(t.cols()));
        for (Eigen::Index c = 0; c < t.cols(); ++c) row[static_cast<std::size_t>(c)] = t(r, c);
        rows.push_back(row);
      }
      tensors[ck.params.name(id)] = rows;
    }
    const auto& n = ck.config;
    json doc = {{"iteration", ck.iteration},
                {"network",
                 {{"kind", to_string(n.kind)},
                  {"depth", n.depth},
                  {"width", n.width},
                  {"omega0", n.omega0},
                  {"sigma_output", n.sigma_output},
                  {"pressure_scale", n.pressure_scale},
                  {"input_lo", n.input_bounds.lo},
                  {"input_hi", n.input_bounds.hi}}},
                {"tensors", tensors}};
    std::ofstream f(a.out);
    f << doc.dump(1) << '\n';
    if (!f) throw IoError("cannot write " + a.out);
  }
  manifest.output(a.out);
  out << "export: wrote " << a.out << '\n';
  return 0;
}

}  // namespace

SynthResult synthesize(const io::SynthConfig& config, const Medium& medium, std::uint64_t seed) {
  config.validate();
  medium.validate();
  const auto positions = rectangular_positions(config.nx, config.ny, config.x0, config.y0, config.dx,
                                               config.dy, config.z);
  SynthResult out;
  if (config.kind == io::SynthKind::kPlaneWave) {
    GridRequest req;
    req.positions = positions;
    req.fs = config.fs;
    req.t0 = config.t0;
    req.samples = config.samples;
    out.truth = planewave_pulse_field(PlaneWavePulseSpec{config.pulses}, medium, req).grid;
  } else {
    if (config.t0 != 0.0) throw ArgumentError("image-source synthesis starts at t0 = 0");
    SourceSpec source{config.source_position, sampled_pulse(config.source_pulse, config.fs)};
    out.truth = image_source_grid(config.room, source, positions, config.fs,
                                  static_cast<double>(config.samples) / config.fs, medium);
    out.truth.pressure.conservativeResize(config.samples, Eigen::NoChange);
  }
  const std::size_t total = positions.size();
  if (config.train_count > 0) {
    std::vector<std::size_t> all(total);
    std::iota(all.begin(), all.end(), 0);
    std::mt19937_64 rng(mix_seed(seed, kSplitStream));
    std::sample(all.begin(), all.end(), std::back_inserter(out.train_indices), config.train_count, rng);
  } else {
    out.train_indices = strided_subset(config.nx, config.ny, config.train_stride, config.train_offset);
  }
  std::vector<bool> used(total, false);
  for (auto i : out.train_indices) used[i] = true;
  for (std::size_t i = 0; i < total; ++i) {
    if (!used[i]) out.heldout_indices.push_back(i);
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sound-field reconstruction with physics-informed neural networks", "wavefield"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  auto* synth = app.add_subcommand("synth", "generate a ground-truth field and its training subset");
  common.attach(synth);

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "train a network on a grid file");
  common.attach(train_cmd);
  train_cmd->add_option("--data", train_args.data, "training grid file")->required();
  train_cmd->add_option("--validation", train_args.validation, "held-out grid file for validation MAE");
  train_cmd->add_option("--domain", train_args.domain, "grid file whose extent joins the input domain");
  train_cmd->add_option("--resume", train_args.resume, "checkpoint to continue from");

  ReconArgs recon;
  auto* recon_cmd = app.add_subcommand("reconstruct", "evaluate a trained network at arbitrary positions");
  common.attach(recon_cmd);
  recon_cmd->add_option("--checkpoint", recon.checkpoint, "checkpoint file")->required();
  recon_cmd->add_option("--grid", recon.grid, "take positions and time axis from a grid file");
  recon_cmd->add_option("--positions", recon.positions, "CSV of x,y[,z] positions");
  recon_cmd->add_option("--nx", recon.nx);
  recon_cmd->add_option("--ny", recon.ny);
  recon_cmd->add_option("--x0", recon.x0);
  recon_cmd->add_option("--y0", recon.y0);
  recon_cmd->add_option("--dx", recon.dx);
  recon_cmd->add_option("--dy", recon.dy);
  recon_cmd->add_option("--z", recon.z);
  recon_cmd->add_option("--fs", recon.fs, "output sample rate (Hz)");
  recon_cmd->add_option("--t0", recon.t0, "output start time (s)");
  recon_cmd->add_option("--samples", recon.samples, "output length");
  recon_cmd->add_flag("--velocity", recon.velocity, "also write particle velocity and intensity");

  BaselineArgs base;
  auto* base_cmd = app.add_subcommand("baseline", "fit a classical baseline and reconstruct");
  common.attach(base_cmd);
  base_cmd->add_option("--method", base.method, "td-laplace or pw-rls (default from config)");
  base_cmd->add_option("--data", base.data, "training grid file")->required();
  base_cmd->add_option("--targets", base.targets, "grid file giving the target positions")->required();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "compare reconstructions against the truth");
  common.attach(eval_cmd);
  eval_cmd->add_option("--truth", eval.truth, "truth grid file")->required();
  eval_cmd->add_option("--est", eval.estimates, "estimate grid file (repeatable)")->required();
  eval_cmd->add_option("--label", eval.labels, "method label per estimate");
  eval_cmd->add_option("--training", eval.training, "training grid file for distance studies");

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "convert a grid to CSV or a checkpoint to JSON");
  common.attach(export_cmd);
  export_cmd->add_option("--grid", exp.grid, "grid file");
  export_cmd->add_option("--checkpoint", exp.checkpoint, "checkpoint file");
  export_cmd->add_option("--out", exp.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::vector<std::string> args(argv, argv + argc);
  try {
    const io::RunConfig cfg = common.load();
    CLI::App* cmd = app.get_subcommands().front();
    Manifest manifest(cmd->get_name(), cfg, args);
    const fs::path dir = common.out_dir;
    int code = 0;
    if (cmd == synth) code = cmd_synth(cfg, dir, manifest, out);
    else if (cmd == train_cmd) code = cmd_train(cfg, train_args, dir, manifest, out, err);
    else if (cmd == recon_cmd) code = cmd_reconstruct(cfg, recon, dir, manifest, out);
    else if (cmd == base_cmd) code = cmd_baseline(cfg, base, dir, manifest, out, err);
    else if (cmd == eval_cmd) code = cmd_evaluate(cfg, eval, dir, manifest, out);
    else code = cmd_export(exp, manifest, out);
    ensure_dir(dir);
    manifest.write(dir);
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace wavefield::cli
