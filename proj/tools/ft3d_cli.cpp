// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "ft3d/config.hpp"
#include "ft3d/pipeline.hpp"

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> fps;
  std::string out_dir = "run";
  std::vector<std::string> overrides;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "Configuration file (key = value)");
  app->add_option("--seed", c.seed, "Top-level random seed");
  app->add_option("--fps", c.fps, "Sequence frame rate");
  app->add_option("--out-dir", c.out_dir, "Run directory for stage inputs and outputs");
  app->add_option("--set", c.overrides, "Override a config key, KEY=VALUE (repeatable)");
}

ft3d::PipelineConfig resolve(const Common& c) {
  ft3d::PipelineConfig cfg = c.config.empty() ? ft3d::PipelineConfig{} : ft3d::load_config(c.config);
  for (const std::string& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ft3d::ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
    ft3d::set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (c.seed) ft3d::set_config_value(cfg, "seed", std::to_string(*c.seed));
  if (c.fps) ft3d::set_config_value(cfg, "fps", ft3d::format_double(*c.fps));
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ft3d: stereo 3D fish tracking pipeline"};
  app.require_subcommand(1);

  Common common;
  bool dump_frames = false;
  struct Stage {
    const char* name;
    const char* help;
  };
  const Stage stages[] = {
      {"simulate", "Simulate a sequence: trajectories, annotations, calibration"},
      {"detect", "Produce detections.csv from the configured detection source"},
      {"track2d", "Build per-view 2D tracklets"},
      {"associate", "Associate 2D tracklets across views into 3D tracklets"},
      {"stitch", "Stitch 3D tracklets into n_fish tracks"},
      {"evaluate", "Evaluate tracks.csv against annotations.csv"},
      {"complexity", "Occlusion complexity of annotations.csv"},
      {"pipeline", "Run every stage in order"},
  };
  for (const Stage& s : stages) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, common);
    if (std::string(s.name) == "simulate") sub->add_flag("--dump-frames", dump_frames, "Also write PGM frames");
  }
  CLI::App* defaults = app.add_subcommand("defaults", "Print the default configuration");
  std::string defaults_config;
  defaults->add_option("--config", defaults_config, "Print this configuration with defaults filled in");

  CLI11_PARSE(app, argc, argv);

  try {
    if (defaults->parsed()) {
      const ft3d::PipelineConfig cfg =
          defaults_config.empty() ? ft3d::PipelineConfig{} : ft3d::load_config(defaults_config);
      std::cout << ft3d::dump_config(cfg);
      return 0;
    }
    const ft3d::PipelineConfig cfg = resolve(common);
    const ft3d::RunPaths paths{common.out_dir};
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "simulate") {
      ft3d::run_simulate(cfg, paths, dump_frames);
    } else if (cmd == "detect") {
      ft3d::run_detect(cfg, paths);
    } else if (cmd == "track2d") {
      ft3d::run_track2d(cfg, paths);
    } else if (cmd == "associate") {
      ft3d::run_associate(cfg, paths);
    } else if (cmd == "stitch") {
      ft3d::run_stitch(cfg, paths);
    } else if (cmd == "evaluate") {
      std::cout << ft3d::report_table(ft3d::run_evaluate(cfg, paths));
    } else if (cmd == "complexity") {
      std::cout << ft3d::report_table(ft3d::run_complexity(cfg, paths));
    } else if (cmd == "pipeline") {
      std::cout << ft3d::report_table(ft3d::run_pipeline(cfg, paths));
    }
  } catch (const std::exception& e) {
    std::cerr << "ft3d: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
