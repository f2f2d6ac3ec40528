// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

// Flat key = value configuration.
//
//   # comment
//   key = value
//
// Keys are dotted (`track2d.tau_k`). Unknown keys, repeated keys and values
// that do not parse are errors naming the key and line.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ft3d/crossview.hpp"
#include "ft3d/detect.hpp"
#include "ft3d/simulator.hpp"
#include "ft3d/track2d.hpp"
#include "ft3d/track3d.hpp"

namespace ft3d {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DetectionSource { GroundTruth, Naive, External };

struct PipelineConfig {
  PipelineConfig() { sync(); }

  std::uint64_t seed = 1;
  double fps = 60.0;
  int n_fish = 2;

  SimConfig sim{};
  RenderParams render{};
  DegradeModel degrade{};

  DetectionSource source = DetectionSource::GroundTruth;
  std::string external_path;
  double min_confidence = 95.0;
  DetectParams detect{};

  Track2DParams track2d{};
  AssocParams assoc{};
  StitchParams stitch{};

  double eval_thresh_3d = 0.5;  // cm
  double eval_thresh_2d = 20.0; // px
  std::string calibration;      // empty: built-in rig

  /// Pushes the shared fields (seed, fps, n_fish, tank) into the module
  /// parameter structs.
  void sync();
  /// Throws ConfigError naming the offending parameter.
  void validate() const;
};

std::vector<std::string> config_keys();

/// Sets one key from its text form.
void set_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value);
std::string get_config_value(const PipelineConfig& cfg, const std::string& key);

PipelineConfig parse_config(const std::string& text, const std::string& source = "<config>");
PipelineConfig load_config(const std::filesystem::path& path);
std::string dump_config(const PipelineConfig& cfg);

}  // namespace ft3d
