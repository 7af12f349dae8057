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

#include "wavefield/io/run_config.hpp"

#include <cstdio>
#include <set>

#include <json.hpp>

#include "wavefield/binary_io.hpp"
#include "wavefield/errors.hpp"

namespace wavefield::io {
namespace {

using nlohmann::json;

// Strict reader over one JSON object: every key must be consumed.
class Section {
 public:
  Section(const json* node, std::string path) : node_(node), path_(std::move(path)) {
    if (node_ != nullptr && !node_->is_object()) throw ArgumentError(where() + " must be an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    const json* v = find(key);
    if (v == nullptr) return;
    out = convert<T>(*v, path_ + "." + key);
  }

  Section sub(const char* key) {
    const json* v = find(key);
    return Section(v, path_ + "." + key);
  }

  const json* find(const char* key) {
    if (node_ == nullptr) return nullptr;
    const auto it = node_->find(key);
    if (it == node_->end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  void finish() const {
    if (node_ == nullptr) return;
    for (const auto& item : node_->items()) {
      if (!seen_.contains(item.key())) throw ArgumentError("unknown config key " + path_ + "." + item.key());
    }
  }

  template <typename T>
  static T convert(const json& v, const std::string& path) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ArgumentError(path + " must be a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ArgumentError(path + " must be an integer");
      if (std::is_unsigned_v<T> && v.get<std::int64_t>() < 0) throw ArgumentError(path + " must be >= 0");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ArgumentError(path + " must be a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ArgumentError(path + " must be a string");
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      if (!v.is_array()) throw ArgumentError(path + " must be an array of numbers");
      T out;
      for (std::size_t i = 0; i < v.size(); ++i) out.push_back(convert<double>(v[i], path + "[" + std::to_string(i) + "]"));
      return out;
    } else if constexpr (std::is_same_v<T, Vec3>) {
      if (!v.is_array() || v.size() != 3) throw ArgumentError(path + " must be an array of 3 numbers");
      return {convert<double>(v[0], path), convert<double>(v[1], path), convert<double>(v[2], path)};
    } else if constexpr (std::is_same_v<T, std::array<double, 6>>) {
      if (!v.is_array() || v.size() != 6) throw ArgumentError(path + " must be an array of 6 numbers");
      T out;
      for (std::size_t i = 0; i < 6; ++i) out[i] = convert<double>(v[i], path);
      return out;
    }
    return v.get<T>();
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json* node_;
  std::string path_;
  std::set<std::string> seen_;
};

json pulse_json(const GaussianPulse& p) {
  return {{"center_frequency", p.center_frequency}, {"sigma", p.sigma}, {"delay", p.delay}};
}

void read_pulse(Section s, GaussianPulse& p) {
  s.get("center_frequency", p.center_frequency);
  s.get("sigma", p.sigma);
  s.get("delay", p.delay);
  s.finish();
}

json to_json(const RunConfig& c) {
  json pulses = json::array();
  for (const auto& p : c.synth.pulses) {
    json j = pulse_json(p.waveform);
    j["direction"] = p.direction;
    j["amplitude"] = p.amplitude;
    pulses.push_back(j);
  }
  const auto& s = c.synth;
  const auto& t = c.train;
  const auto& b = c.baseline;
  const auto& e = c.evaluate;
  return {
      {"seed", c.seed},
      {"medium", {{"c", c.medium.c}, {"rho", c.medium.rho}}},
      {"synth",
       {{"kind", to_string(s.kind)}, {"nx", s.nx}, {"ny", s.ny}, {"x0", s.x0}, {"y0", s.y0},
        {"dx", s.dx}, {"dy", s.dy}, {"z", s.z}, {"fs", s.fs}, {"t0", s.t0}, {"samples", s.samples},
        {"train_stride", s.train_stride}, {"train_offset", s.train_offset},
        {"train_count", s.train_count}, {"pulses", pulses},
        {"room",
         {{"dimensions", s.room.dimensions}, {"beta", s.room.beta}, {"max_order", s.room.max_order}}},
        {"source_position", s.source_position}, {"source_pulse", pulse_json(s.source_pulse)}}},
      {"network",
       {{"kind", to_string(c.network.kind)}, {"depth", c.network.depth}, {"width", c.network.width},
        {"omega0", c.network.omega0}, {"sigma_output", c.network.sigma_output}}},
      {"train",
       {{"iterations", t.iterations}, {"lr_w", t.lr_w}, {"lr_eps", t.lr_eps}, {"n_f", t.n_f},
        {"n_d", t.n_d}, {"use_pde", t.use_pde}, {"eps_data_init", t.eps_data_init},
        {"eps_pde_init", t.eps_pde_init}, {"log_every", t.log_every},
        {"checkpoint_every", t.checkpoint_every}, {"validation_samples", t.validation_samples},
        {"clip_gradients", t.clip_gradients}, {"clip_norm", t.clip_norm},
        {"adam", {{"beta1", t.adam.beta1}, {"beta2", t.adam.beta2}, {"eps", t.adam.eps}}}}},
      {"baseline",
       {{"method", to_string(b.method)}, {"solver", baselines::to_string(b.solver.kind)},
        {"lambda", b.solver.lambda}, {"max_iterations", b.solver.max_iterations},
        {"tolerance", b.solver.tolerance}, {"directions", b.directions}, {"f_lo", b.f_lo},
        {"f_hi", b.f_hi}, {"sources", b.sources}, {"filter_len", b.filter_len},
        {"sweep_lambdas", b.sweep_lambdas}}},
      {"evaluate",
       {{"window", e.window}, {"hop", e.hop},
        {"axis",
         {{"sort_axis", e.axis.sort_axis}, {"line_axis", e.axis.line_axis},
          {"line_value", e.axis.line_value}, {"tolerance", e.axis.tolerance}}},
        {"bin_width", e.bin_width}}},
  };
}

RunConfig from_json(const json& root) {
  RunConfig c = default_run_config();
  Section top(&root, "");
  top.get("seed", c.seed);
  {
    Section m = top.sub("medium");
    m.get("c", c.medium.c);
    m.get("rho", c.medium.rho);
    m.finish();
  }
  {
    auto& s = c.synth;
    Section j = top.sub("synth");
    std::string kind = to_string(s.kind);
    j.get("kind", kind);
    s.kind = synth_kind_from_string(kind);
    j.get("nx", s.nx);
    j.get("ny", s.ny);
    j.get("x0", s.x0);
    j.get("y0", s.y0);
    j.get("dx", s.dx);
    j.get("dy", s.dy);
    j.get("z", s.z);
    j.get("fs", s.fs);
    j.get("t0", s.t0);
    j.get("samples", s.samples);
    j.get("train_stride", s.train_stride);
    j.get("train_offset", s.train_offset);
    j.get("train_count", s.train_count);
    if (const json* pulses = j.find("pulses")) {
      if (!pulses->is_array()) throw ArgumentError(".synth.pulses must be an array");
      s.pulses.clear();
      for (std::size_t i = 0; i < pulses->size(); ++i) {
        const std::string path = ".synth.pulses[" + std::to_string(i) + "]";
        Section p(&(*pulses)[i], path);
        PlaneWavePulse pulse;
        p.get("direction", pulse.direction);
        p.get("amplitude", pulse.amplitude);
        p.get("center_frequency", pulse.waveform.center_frequency);
        p.get("sigma", pulse.waveform.sigma);
        p.get("delay", pulse.waveform.delay);
        p.finish();
        s.pulses.push_back(pulse);
      }
    }
    {
      Section r = j.sub("room");
      r.get("dimensions", s.room.dimensions);
      r.get("beta", s.room.beta);
      r.get("max_order", s.room.max_order);
      r.finish();
    }
    j.get("source_position", s.source_position);
    read_pulse(j.sub("source_pulse"), s.source_pulse);
    j.finish();
  }
  {
    Section n = top.sub("network");
    std::string kind = to_string(c.network.kind);
    n.get("kind", kind);
    c.network.kind = net_kind_from_string(kind);
    n.get("depth", c.network.depth);
    n.get("width", c.network.width);
    n.get("omega0", c.network.omega0);
    n.get("sigma_output", c.network.sigma_output);
    n.finish();
  }
  {
    auto& t = c.train;
    Section j = top.sub("train");
    j.get("iterations", t.iterations);
    j.get("lr_w", t.lr_w);
    j.get("lr_eps", t.lr_eps);
    j.get("n_f", t.n_f);
    j.get("n_d", t.n_d);
    j.get("use_pde", t.use_pde);
    j.get("eps_data_init", t.eps_data_init);
    j.get("eps_pde_init", t.eps_pde_init);
    j.get("log_every", t.log_every);
    j.get("checkpoint_every", t.checkpoint_every);
    j.get("validation_samples", t.validation_samples);
    j.get("clip_gradients", t.clip_gradients);
    j.get("clip_norm", t.clip_norm);
    Section a = j.sub("adam");
    a.get("beta1", t.adam.beta1);
    a.get("beta2", t.adam.beta2);
    a.get("eps", t.adam.eps);
    a.finish();
    j.finish();
  }
  {
    auto& b = c.baseline;
    Section j = top.sub("baseline");
    std::string method = to_string(b.method), solver = baselines::to_string(b.solver.kind);
    j.get("method", method);
    b.method = baseline_method_from_string(method);
    j.get("solver", solver);
    b.solver.kind = baselines::solver_kind_from_string(solver);
    j.get("lambda", b.solver.lambda);
    j.get("max_iterations", b.solver.max_iterations);
    j.get("tolerance", b.solver.tolerance);
    j.get("directions", b.directions);
    j.get("f_lo", b.f_lo);
    j.get("f_hi", b.f_hi);
    j.get("sources", b.sources);
    j.get("filter_len", b.filter_len);
    j.get("sweep_lambdas", b.sweep_lambdas);
    j.finish();
  }
  {
    auto& e = c.evaluate;
    Section j = top.sub("evaluate");
    j.get("window", e.window);
    j.get("hop", e.hop);
    Section a = j.sub("axis");
    a.get("sort_axis", e.axis.sort_axis);
    a.get("line_axis", e.axis.line_axis);
    a.get("line_value", e.axis.line_value);
    a.get("tolerance", e.axis.tolerance);
    a.finish();
    j.get("bin_width", e.bin_width);
    j.finish();
  }
  top.finish();
  c.train.seed = c.seed;
  c.validate();
  return c;
}

}  // namespace

std::vector<PlaneWavePulse> SynthConfig::default_pulses() {
  return {
      {0.4, 1.0, GaussianPulse{150.0, 2e-3, 0.012}},
      {2.3, 1.0, GaussianPulse{150.0, 2e-3, 0.025}},
      {4.1, 1.0, GaussianPulse{150.0, 2e-3, 0.038}},
  };
}

void SynthConfig::validate() const {
  if (nx < 1 || ny < 1) throw ArgumentError("synth grid needs nx, ny >= 1");
  if ((nx > 1 && !(dx > 0.0)) || (ny > 1 && !(dy > 0.0))) throw ArgumentError("synth spacing must be positive");
  if (!(fs > 0.0)) throw ArgumentError("synth fs must be positive");
  if (samples < 1) throw ArgumentError("synth samples must be >= 1");
  if (train_count == 0 && train_stride < 1) throw ArgumentError("train_stride must be >= 1");
  if (train_offset < 0) throw ArgumentError("train_offset must be >= 0");
  if (train_count > static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw ArgumentError("train_count exceeds the number of receivers");
  }
  if (kind == SynthKind::kPlaneWave) {
    PlaneWavePulseSpec{pulses}.validate();
  } else {
    room.validate();
    if (!room.contains(source_position)) throw ArgumentError("source lies outside the room");
    if (source_pulse.center_frequency < 0.0 || !(source_pulse.sigma > 0.0)) {
      throw ArgumentError("source pulse needs center_frequency >= 0 and sigma > 0");
    }
  }
}

void BaselineConfig::validate() const {
  solver.validate();
  if (directions < 1) throw ArgumentError("baseline needs at least one direction");
  if (sources < 1) throw ArgumentError("baseline needs at least one virtual source");
  if (!(f_lo >= 0.0) || !(f_hi > f_lo)) throw ArgumentError("baseline frequency range must satisfy 0 <= f_lo < f_hi");
  if (filter_len < 1 || filter_len % 2 == 0) throw ArgumentError("filter_len must be odd");
  for (double l : sweep_lambdas) {
    if (!(l >= 0.0)) throw ArgumentError("sweep lambdas must be >= 0");
  }
}

void EvaluateConfig::validate() const {
  if (!(window > 0.0) || !(hop > 0.0)) throw ArgumentError("evaluation window and hop must be positive");
  if (axis.sort_axis < 0 || axis.sort_axis > 2 || axis.line_axis > 2) {
    throw ArgumentError("evaluation axes must be 0, 1 or 2 (line_axis may be -1)");
  }
  if (!(bin_width > 0.0)) throw ArgumentError("bin_width must be positive");
}

void RunConfig::validate() const {
  medium.validate();
  synth.validate();
  NetConfig probe = network;
  probe.input_bounds = Box3{{-1.0, -1.0, 0.0}, {1.0, 1.0, 1.0}};
  probe.validate();
  train.validate();
  baseline.validate();
  evaluate.validate();
}

RunConfig default_run_config() {
  RunConfig c;
  c.network.omega0 = 10.0;
  c.train.iterations = 3000;
  c.train.lr_w = 1e-3;
  c.train.lr_eps = 1e-4;
  c.train.n_f = 1000;
  c.train.n_d = 1000;
  c.train.eps_pde_init = 30.0;
  c.train.seed = c.seed;
  return c;
}

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ArgumentError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(root);
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return parse_run_config(std::string(bytes.begin(), bytes.end()));
  } catch (const ArgumentError& e) {
    throw ArgumentError(path.string() + ": " + e.what());
  }
}

std::string dump_run_config(const RunConfig& config) { return to_json(config).dump(2); }

RunConfig apply_overrides(const RunConfig& config, const std::vector<std::string>& assignments) {
  json root = to_json(config);
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("override '" + a + "' must look like key=value");
    const std::string key = a.substr(0, eq), text = a.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    json* node = &root;
    std::size_t start = 0;
    while (true) {
      const auto dot = key.find('.', start);
      const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (!node->is_object() || !node->contains(part)) throw ArgumentError("unknown config key " + key);
      node = &(*node)[part];
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    *node = value;
  }
  return from_json(root);
}

std::string config_hash(const RunConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_string(BaselineMethod method) {
  return method == BaselineMethod::kTdLaplace ? "td-laplace" : "pw-rls";
}

BaselineMethod baseline_method_from_string(const std::string& name) {
  if (name == "td-laplace") return BaselineMethod::kTdLaplace;
  if (name == "pw-rls") return BaselineMethod::kPwRls;
  throw UsageError("unknown baseline method '" + name + "' (expected td-laplace or pw-rls)");
}

std::string to_string(SynthKind kind) {
  return kind == SynthKind::kImageSource ? "image-source" : "planewave";
}

SynthKind synth_kind_from_string(const std::string& name) {
  if (name == "planewave") return SynthKind::kPlaneWave;
  if (name == "image-source") return SynthKind::kImageSource;
  throw ArgumentError("unknown synth kind '" + name + "' (expected planewave or image-source)");
}

}  // namespace wavefield::io
