// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "ft3d/io.hpp"

namespace ft3d {

namespace {

struct Key {
  std::string name;
  std::function<std::string(const PipelineConfig&)> get;
  std::function<void(PipelineConfig&, const std::string&)> set;
};

template <class T>
T parse_number(const std::string& key, const std::string& s) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ConfigError(key + ": cannot parse '" + s + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + s + "'");
}

std::string mode_name(DistanceMode m) { return m == DistanceMode::EuclideanHead ? "euclidean" : "mahalanobis"; }

DistanceMode parse_mode(const std::string& key, const std::string& s) {
  if (s == "euclidean") return DistanceMode::EuclideanHead;
  if (s == "mahalanobis") return DistanceMode::MahalanobisCentroid;
  throw ConfigError(key + ": expected euclidean or mahalanobis, got '" + s + "'");
}

std::string source_name(DetectionSource s) {
  switch (s) {
    case DetectionSource::GroundTruth: return "gt";
    case DetectionSource::Naive: return "naive";
    case DetectionSource::External: return "external";
  }
  return "gt";
}

Key dbl(std::string name, std::function<double&(PipelineConfig&)> ref) {
  return {name, [ref](const PipelineConfig& c) { return format_double(ref(const_cast<PipelineConfig&>(c))); },
          [ref, name](PipelineConfig& c, const std::string& s) { ref(c) = parse_number<double>(name, s); }};
}

Key integer(std::string name, std::function<int&(PipelineConfig&)> ref) {
  return {name, [ref](const PipelineConfig& c) { return std::to_string(ref(const_cast<PipelineConfig&>(c))); },
          [ref, name](PipelineConfig& c, const std::string& s) { ref(c) = parse_number<int>(name, s); }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      {"seed", [](const PipelineConfig& c) { return std::to_string(c.seed); },
       [](PipelineConfig& c, const std::string& s) { c.seed = parse_number<std::uint64_t>("seed", s); }},
      dbl("fps", [](PipelineConfig& c) -> double& { return c.fps; }),
      integer("n_fish", [](PipelineConfig& c) -> int& { return c.n_fish; }),

      dbl("sim.duration_s", [](PipelineConfig& c) -> double& { return c.sim.duration_s; }),
      dbl("sim.speed", [](PipelineConfig& c) -> double& { return c.sim.speed; }),
      dbl("sim.reversion", [](PipelineConfig& c) -> double& { return c.sim.reversion; }),
      dbl("sim.turn_rate", [](PipelineConfig& c) -> double& { return c.sim.turn_rate; }),
      dbl("sim.body_half_length", [](PipelineConfig& c) -> double& { return c.sim.body.half_length; }),
      dbl("sim.body_half_width", [](PipelineConfig& c) -> double& { return c.sim.body.half_width; }),
      dbl("sim.head_offset", [](PipelineConfig& c) -> double& { return c.sim.body.head_offset; }),
      {"sim.separate_lanes", [](const PipelineConfig& c) { return std::string(c.sim.separate_lanes ? "true" : "false"); },
       [](PipelineConfig& c, const std::string& s) { c.sim.separate_lanes = parse_bool("sim.separate_lanes", s); }},
      dbl("sim.render_noise", [](PipelineConfig& c) -> double& { return c.render.noise_sigma; }),

      dbl("degrade.drop_rate", [](PipelineConfig& c) -> double& { return c.degrade.drop_rate; }),
      dbl("degrade.jitter_sigma", [](PipelineConfig& c) -> double& { return c.degrade.jitter_sigma; }),
      dbl("degrade.ghost_rate", [](PipelineConfig& c) -> double& { return c.degrade.ghost_rate; }),

      {"detect.source", [](const PipelineConfig& c) { return source_name(c.source); },
       [](PipelineConfig& c, const std::string& s) {
         if (s == "gt") c.source = DetectionSource::GroundTruth;
         else if (s == "naive") c.source = DetectionSource::Naive;
         else if (s == "external") c.source = DetectionSource::External;
         else throw ConfigError("detect.source: expected gt, naive or external, got '" + s + "'");
       }},
      {"detect.external_path", [](const PipelineConfig& c) { return c.external_path; },
       [](PipelineConfig& c, const std::string& s) { c.external_path = s; }},
      dbl("detect.min_confidence", [](PipelineConfig& c) -> double& { return c.min_confidence; }),
      integer("detect.n_bg", [](PipelineConfig& c) -> int& { return c.detect.n_bg; }),
      integer("detect.downsample", [](PipelineConfig& c) -> int& { return c.detect.downsample; }),
      dbl("detect.nms_thresh", [](PipelineConfig& c) -> double& { return c.detect.nms_thresh; }),
      dbl("detect.junction_divisor", [](PipelineConfig& c) -> double& { return c.detect.junction_divisor; }),
      dbl("detect.min_keypoint_weight", [](PipelineConfig& c) -> double& { return c.detect.min_keypoint_weight; }),
      integer("detect.min_blob_area", [](PipelineConfig& c) -> int& { return c.detect.min_blob_area; }),
      integer("detect.min_contrast", [](PipelineConfig& c) -> int& { return c.detect.min_contrast; }),
      integer("detect.intermodes_max_iterations",
              [](PipelineConfig& c) -> int& { return c.detect.intermodes_max_iterations; }),

      dbl("track2d.delta_top", [](PipelineConfig& c) -> double& { return c.track2d.delta_top; }),
      dbl("track2d.delta_front", [](PipelineConfig& c) -> double& { return c.track2d.delta_front; }),
      integer("track2d.tau_k", [](PipelineConfig& c) -> int& { return c.track2d.tau_k; }),
      {"track2d.top_mode", [](const PipelineConfig& c) { return mode_name(c.track2d.top_mode); },
       [](PipelineConfig& c, const std::string& s) { c.track2d.top_mode = parse_mode("track2d.top_mode", s); }},
      {"track2d.front_mode", [](const PipelineConfig& c) { return mode_name(c.track2d.front_mode); },
       [](PipelineConfig& c, const std::string& s) { c.track2d.front_mode = parse_mode("track2d.front_mode", s); }},

      integer("assoc.alpha", [](PipelineConfig& c) -> int& { return c.assoc.alpha; }),
      dbl("assoc.tau_p", [](PipelineConfig& c) -> double& { return c.assoc.tau_p; }),
      dbl("assoc.lambda_err", [](PipelineConfig& c) -> double& { return c.assoc.lambda_err; }),
      dbl("assoc.lambda_s", [](PipelineConfig& c) -> double& { return c.assoc.lambda_s; }),

      dbl("stitch.beta", [](PipelineConfig& c) -> double& { return c.stitch.beta; }),
      dbl("stitch.main_fraction", [](PipelineConfig& c) -> double& { return c.stitch.main_fraction; }),
      dbl("stitch.overlap_scale", [](PipelineConfig& c) -> double& { return c.stitch.overlap_scale; }),

      dbl("eval.thresh_3d", [](PipelineConfig& c) -> double& { return c.eval_thresh_3d; }),
      dbl("eval.thresh_2d", [](PipelineConfig& c) -> double& { return c.eval_thresh_2d; }),

      dbl("tank.x_min", [](PipelineConfig& c) -> double& { return c.sim.tank.x_min; }),
      dbl("tank.x_max", [](PipelineConfig& c) -> double& { return c.sim.tank.x_max; }),
      dbl("tank.y_min", [](PipelineConfig& c) -> double& { return c.sim.tank.y_min; }),
      dbl("tank.y_max", [](PipelineConfig& c) -> double& { return c.sim.tank.y_max; }),
      dbl("tank.z_min", [](PipelineConfig& c) -> double& { return c.sim.tank.z_min; }),
      dbl("tank.z_max", [](PipelineConfig& c) -> double& { return c.sim.tank.z_max; }),
      {"calibration", [](const PipelineConfig& c) { return c.calibration; },
       [](PipelineConfig& c, const std::string& s) { c.calibration = s; }},
  };
  return k;
}

const Key& find_key(const std::string& name) {
  for (const Key& k : keys())
    if (k.name == name) return k;
  throw ConfigError("unknown config key '" + name + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

void PipelineConfig::sync() {
  sim.n_fish = n_fish;
  sim.fps = fps;
  sim.seed = seed;
  detect.n_fish = n_fish;
  stitch.n_fish = n_fish;
  assoc.fps = fps;
}

void PipelineConfig::validate() const {
  auto check = [](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string(what) + ": " + e.what());
    } catch (const GeometryError& e) {
      throw ConfigError(std::string(what) + ": " + e.what());
    }
  };
  if (n_fish < 1) throw ConfigError("n_fish must be at least 1");
  if (!(fps > 0.0)) throw ConfigError("fps must be positive");
  check("sim", [&] { sim.validate(); });
  check("detect", [&] { detect.validate(); });
  check("track2d", [&] { track2d.validate(); });
  check("assoc", [&] { assoc.validate(); });
  check("stitch", [&] { stitch.validate(); });
  if (!(degrade.drop_rate >= 0.0 && degrade.drop_rate <= 1.0)) throw ConfigError("degrade.drop_rate must lie in [0, 1]");
  if (!(degrade.ghost_rate >= 0.0 && degrade.ghost_rate <= 1.0))
    throw ConfigError("degrade.ghost_rate must lie in [0, 1]");
  if (!(degrade.jitter_sigma >= 0.0)) throw ConfigError("degrade.jitter_sigma must be non-negative");
  if (!(render.noise_sigma >= 0.0)) throw ConfigError("sim.render_noise must be non-negative");
  if (!(min_confidence >= 0.0 && min_confidence <= 100.0))
    throw ConfigError("detect.min_confidence must lie in [0, 100]");
  if (source == DetectionSource::External && external_path.empty())
    throw ConfigError("detect.external_path is required when detect.source = external");
  if (!(eval_thresh_3d > 0.0)) throw ConfigError("eval.thresh_3d must be positive");
  if (!(eval_thresh_2d > 0.0)) throw ConfigError("eval.thresh_2d must be positive");
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const Key& k : keys()) out.push_back(k.name);
  return out;
}

void set_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value) {
  find_key(key).set(cfg, value);
  cfg.sync();
}

std::string get_config_value(const PipelineConfig& cfg, const std::string& key) { return find_key(key).get(cfg); }

PipelineConfig parse_config(const std::string& text, const std::string& source) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::set<std::string> seen;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(source + ":" + std::to_string(n) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError(source + ":" + std::to_string(n) + ": repeated key '" + key + "'");
    try {
      set_config_value(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  cfg.sync();
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string dump_config(const PipelineConfig& cfg) {
  std::string out;
  for (const Key& k : keys()) out += k.name + " = " + k.get(cfg) + "\n";
  return out;
}

}  // namespace ft3d
