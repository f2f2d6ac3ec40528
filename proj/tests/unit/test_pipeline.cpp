// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ft3d/config.hpp"
#include "ft3d/pipeline.hpp"

using namespace ft3d;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

PipelineConfig clean_two_fish() {
  PipelineConfig cfg;
  set_config_value(cfg, "n_fish", "2");
  set_config_value(cfg, "sim.separate_lanes", "true");
  return cfg;
}

}  // namespace

TEST_CASE("clean two-fish run is perfect") {
  const InMemoryRun run = run_in_memory(clean_two_fish());
  CHECK(run.report.mot.mota == 100.0);
  CHECK(run.report.mot.idsw == 0);
  CHECK(run.report.mot.frag == 0);
  CHECK(run.tracks.size() == 2);
}

TEST_CASE("pipeline output equals chained stages") {
  PipelineConfig cfg = clean_two_fish();
  set_config_value(cfg, "sim.duration_s", "5");
  set_config_value(cfg, "degrade.drop_rate", "0.1");
  set_config_value(cfg, "degrade.jitter_sigma", "1");
  const auto root = std::filesystem::temp_directory_path() / "ft3d_test_pipeline";
  std::filesystem::remove_all(root);
  const RunPaths whole{root / "whole"}, staged{root / "staged"};
  std::filesystem::create_directories(whole.dir);
  std::filesystem::create_directories(staged.dir);

  const EvalReport a = run_pipeline(cfg, whole);
  run_simulate(cfg, staged);
  run_detect(cfg, staged);
  run_track2d(cfg, staged);
  run_associate(cfg, staged);
  run_stitch(cfg, staged);
  const EvalReport b = run_evaluate(cfg, staged);
  run_complexity(cfg, staged);
  CHECK(a.mot.mota == b.mot.mota);
  for (const auto& entry : std::filesystem::directory_iterator(whole.dir)) {
    const auto name = entry.path().filename();
    CAPTURE(name.string());
    REQUIRE(std::filesystem::exists(staged.dir / name));
    CHECK(slurp(entry.path()) == slurp(staged.dir / name));
  }

  const InMemoryRun mem = run_in_memory(cfg);
  CHECK(mem.report.mot.mota == a.mot.mota);
  CHECK(mem.report.mot.idsw == a.mot.idsw);
}

TEST_CASE("missing stage input names the file") {
  const RunPaths empty{std::filesystem::temp_directory_path() / "ft3d_test_pipeline_empty"};
  std::filesystem::create_directories(empty.dir);
  std::filesystem::remove(empty.tracks());
  try {
    run_evaluate(PipelineConfig{}, empty);
    FAIL("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find(".csv") != std::string::npos);
  }
}
