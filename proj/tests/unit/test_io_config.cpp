// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "ft3d/config.hpp"
#include "ft3d/io.hpp"
#include "ft3d/pipeline.hpp"

using namespace ft3d;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ft3d_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("doubles print shortest and read back exactly") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("detections round trip") {
  DetectionSet d;
  Detection a;
  a.frame = 3;
  a.view = View::Top;
  a.head = {1.25, 2.5};
  a.candidates = {a.head};
  a.centroid = a.head;
  a.confidence = 97.5;
  a.bbox = BBox{1, 2, 3, 4};
  Detection b;
  b.frame = 3;
  b.view = View::Front;
  b.head = {10, 11};
  b.candidates = {{12, 13}, {10, 11}, {14, 11}};
  b.centroid = {12, 13};
  b.cov = Cov2{4, 0.5, 2};
  d.top[3].push_back(a);
  d.front[3].push_back(b);
  const auto path = scratch("det.csv");
  write_detections_csv(path, d, {{"seed", "7"}});
  HeaderMeta meta;
  const DetectionSet r = read_detections_csv(path, &meta);
  CHECK(meta.at("seed") == "7");
  const Detection& ra = r.top.at(3).at(0);
  CHECK(ra.head == a.head);
  CHECK(ra.bbox == a.bbox);
  CHECK(ra.confidence == a.confidence);
  const Detection& rb = r.front.at(3).at(0);
  CHECK(rb.candidates == b.candidates);
  CHECK(rb.centroid == b.centroid);
  CHECK(rb.cov == b.cov);
  write_detections_csv(scratch("det2.csv"), r, {{"seed", "7"}});
  CHECK(slurp(path) == slurp(scratch("det2.csv")));
}

TEST_CASE("malformed rows report the line") {
  const auto path = scratch("bad.csv");
  {
    std::ofstream o(path);
    o << "# seed=1\nframe,fish_id,x,y,z\n0,1,1,2,3\n1,1,1,x,3\n";
  }
  try {
    read_tracks_csv(path);
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    const std::string what = e.what();
    CHECK(what.find("bad.csv") != std::string::npos);
    CHECK(what.find(":4") != std::string::npos);
  }
  {
    std::ofstream o(path);
    o << "frame,fish_id,x,y,z\n0,1,1,2\n";
  }
  CHECK_THROWS_AS(read_tracks_csv(path), FormatError);
  CHECK_THROWS_AS(read_tracks_csv(scratch("missing.csv")), FormatError);
}

TEST_CASE("tracks and annotations round trip") {
  Track3D t;
  t.fish_id = 2;
  t.points = {{0, {1, 2, 3}}, {5, {0.1, 0.2, 0.3}}};
  const auto tp = scratch("tracks.csv");
  write_tracks_csv(tp, {t});
  const FrameObjects o = read_tracks_csv(tp);
  CHECK(o.at(5).at(2) == Point3D{0.1, 0.2, 0.3});

  SimConfig cfg;
  cfg.n_fish = 3;
  cfg.duration_s = 0.5;
  const GroundTruth gt = annotate(simulate(cfg));
  const auto ap = scratch("ann.csv");
  write_annotations_csv(ap, gt);
  const GroundTruth r = read_annotations_csv(ap);
  CHECK(r.n_frames == gt.n_frames);
  CHECK(r.n_fish == 3);
  CHECK(r.fps == gt.fps);
  for (const auto& [f, fish] : gt.frames)
    for (const auto& [id, e] : fish) {
      const GtEntry& q = r.frames.at(f).at(id);
      CHECK(q.point == e.point);
      CHECK(q.top.bbox == e.top.bbox);
      CHECK(q.front.head == e.front.head);
      CHECK(q.front.occluded == e.front.occluded);
    }
}

TEST_CASE("calibration round trip") {
  TankBounds tank;
  tank.z_max = 20;
  const StereoRig rig = make_default_rig(tank);
  const auto p = scratch("calib.json");
  write_calibration_json(p, rig, tank);
  TankBounds back;
  const StereoRig r = read_calibration_json(p, &back);
  CHECK(back.z_max == 20);
  const Point3D x{3, 4, 5};
  CHECK(r.top.project(x) == rig.top.project(x));
  CHECK(r.front.project(x) == rig.front.project(x));
}

TEST_CASE("config dump and load are inverse") {
  PipelineConfig cfg;
  set_config_value(cfg, "n_fish", "5");
  set_config_value(cfg, "track2d.front_mode", "mahalanobis");
  set_config_value(cfg, "assoc.lambda_err", "0.1");
  set_config_value(cfg, "sim.separate_lanes", "true");
  const std::string text = dump_config(cfg);
  const PipelineConfig back = parse_config(text);
  CHECK(dump_config(back) == text);
  CHECK(back.stitch.n_fish == 5);
  CHECK(back.detect.n_fish == 5);
  CHECK(back.track2d.front_mode == DistanceMode::MahalanobisCentroid);
  for (const std::string& k : config_keys()) CHECK(get_config_value(back, k) == get_config_value(cfg, k));
}

TEST_CASE("config errors") {
  try {
    parse_config("seed = 1\nbogus.key = 3\n", "x.cfg");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("bogus.key") != std::string::npos);
    CHECK(what.find("x.cfg:2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("seed = 1\nseed = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("fps = fast\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("stitch.beta = -1\n"), ConfigError);
  CHECK_NOTHROW(parse_config("# comment\n\n  seed = 3  \n"));
  PipelineConfig cfg;
  CHECK_THROWS_AS(set_config_value(cfg, "track2d.top_mode", "manhattan"), ConfigError);
}

TEST_CASE("report formats") {
  EvalReport r;
  r.mot.mota = 100;
  r.thresh = 0.5;
  const std::string j = report_json(r, {{"seed", "3"}});
  CHECK(j.find("\"schema_version\": 1") != std::string::npos);
  CHECK(j.find("\"MOTA\": 100.0") != std::string::npos);
  CHECK(report_table(r).find("MOTA") != std::string::npos);
}
