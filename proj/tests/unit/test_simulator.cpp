// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <doctest.h>

#include <cmath>

#include "ft3d/complexity.hpp"
#include "ft3d/simulator.hpp"

using namespace ft3d;

namespace {

FishState level_fish(Point3D c, double yaw, const FishBody& body) {
  FishState s;
  s.center = c;
  s.heading = {std::cos(yaw), std::sin(yaw), 0};
  const double ho = body.head_offset * body.half_length;
  s.head = {c.x + ho * s.heading.x, c.y + ho * s.heading.y, c.z};
  return s;
}

SyntheticSequence two_fish_at(Point3D a, Point3D b) {
  SimConfig cfg;
  cfg.n_fish = 2;
  cfg.duration_s = 0.1;
  SyntheticSequence seq = simulate(cfg);
  seq.frames.assign(1, {level_fish(a, 0, cfg.body), level_fish(b, 0, cfg.body)});
  return seq;
}

}  // namespace

TEST_CASE("simulation is deterministic") {
  SimConfig cfg;
  cfg.n_fish = 3;
  cfg.duration_s = 2;
  cfg.seed = 99;
  const SyntheticSequence a = simulate(cfg), b = simulate(cfg);
  REQUIRE(a.frames.size() == 120);
  for (std::size_t f = 0; f < a.frames.size(); ++f)
    for (std::size_t i = 0; i < a.frames[f].size(); ++i) {
      CHECK(a.frames[f][i].center == b.frames[f][i].center);
      CHECK(a.frames[f][i].head == b.frames[f][i].head);
    }
  cfg.seed = 100;
  CHECK_FALSE(simulate(cfg).frames[60][0].center == a.frames[60][0].center);
  const auto ra = render_frame(a, 10), rb = render_frame(b, 10);
  CHECK(ra.first == rb.first);
  CHECK(ra.second == rb.second);
}

TEST_CASE("fish stay in the tank and keep the target speed") {
  SimConfig cfg;
  cfg.n_fish = 1;
  cfg.fps = 60;
  cfg.duration_s = 100000.0 / 60;
  const SyntheticSequence seq = simulate(cfg);
  REQUIRE(seq.frames.size() == 100000);
  double path = 0.0;
  bool inside = true;
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    inside = inside && in_tank(seq.frames[f][0].center, cfg.tank) && in_tank(seq.frames[f][0].head, cfg.tank);
    if (f) path += distance(seq.frames[f][0].center, seq.frames[f - 1][0].center);
  }
  CHECK(inside);
  const double mean_speed = path / (cfg.duration_s - 1 / cfg.fps);
  CHECK(mean_speed > 0.8 * cfg.speed);
  CHECK(mean_speed < 1.2 * cfg.speed);
}

TEST_CASE("separate lanes keep fish apart") {
  SimConfig cfg;
  cfg.n_fish = 2;
  cfg.duration_s = 15;
  cfg.separate_lanes = true;
  const GroundTruth gt = annotate(simulate(cfg));
  CHECK(complexity_report(gt).top.oc == 0.0);
  CHECK(complexity_report(gt).front.oc == 0.0);
  CHECK(gt.n_frames == 900);
  CHECK(gt.frames.at(0).size() == 2);
}

TEST_CASE("occlusion flags follow box contact") {
  SUBCASE("far apart") {
    const GroundTruth gt = annotate(two_fish_at({5, 5, 3}, {25, 25, 12}));
    for (const auto& [id, e] : gt.frames.at(0)) {
      CHECK_FALSE(e.top.occluded);
      CHECK_FALSE(e.front.occluded);
    }
    CHECK(complexity_stats(gt, View::Top).oc == 0.0);
  }
  SUBCASE("touching boxes flag both fish") {
    SyntheticSequence seq = two_fish_at({10, 10, 5}, {10, 20, 5});
    const double gap_px = [&] {
      const BBox a = project_fish(seq.frames[0][0], seq.cfg.body, seq.rig.top).bounds();
      const BBox b = project_fish(seq.frames[0][1], seq.cfg.body, seq.rig.top).bounds();
      return b.y - (a.y + a.h);
    }();
    REQUIRE(std::abs(gap_px) > 1.0);
    // Slide the second fish in until the top-view boxes just overlap.
    for (double y = 20; y > 10; y -= 0.01) {
      seq.frames[0] = {level_fish({10, 10, 5}, 0, seq.cfg.body), level_fish({10, y, 5}, 0, seq.cfg.body)};
      const BBox a = project_fish(seq.frames[0][0], seq.cfg.body, seq.rig.top).bounds();
      const BBox b = project_fish(seq.frames[0][1], seq.cfg.body, seq.rig.top).bounds();
      if (intersection_area(a, b) > 0.0) break;
    }
    const GroundTruth gt = annotate(seq);
    CHECK(gt.frames.at(0).at(1).top.occluded);
    CHECK(gt.frames.at(0).at(2).top.occluded);
    CHECK(complexity_stats(gt, View::Top).oc > 0.0);
  }
  SUBCASE("flags are symmetric") {
    SimConfig cfg;
    cfg.n_fish = 5;
    cfg.duration_s = 10;
    cfg.seed = 4;
    const GroundTruth gt = annotate(simulate(cfg));
    for (const auto& [f, fish] : gt.frames)
      for (View v : {View::Top, View::Front})
        for (const auto& [i, e] : fish) {
          bool touches = false;
          for (const auto& [j, o] : fish)
            if (j != i && intersection_area(e.of(v).bbox, o.of(v).bbox) > 0.0) touches = true;
          CHECK(e.of(v).occluded == touches);
        }
  }
}

TEST_CASE("rendered blob centroid matches the projected centre") {
  SimConfig cfg;
  cfg.n_fish = 1;
  cfg.duration_s = 1;
  cfg.seed = 5;
  const SyntheticSequence seq = simulate(cfg);
  for (int f : {0, 20, 40}) {
    const auto [top, front] = render_frame(seq, f, RenderParams{200, 40, 0.0});
    for (View v : {View::Top, View::Front}) {
      const GrayImage& img = v == View::Top ? top : front;
      const CameraModel& cam = v == View::Top ? seq.rig.top : seq.rig.front;
      double n = 0, su = 0, sv = 0;
      for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
          if (img.at(x, y) < 120) {
            n += 1;
            su += x;
            sv += y;
          }
      REQUIRE(n > 0);
      const Point2D c = project_fish(seq.frames[f][0], cfg.body, cam).center;
      CHECK(std::hypot(su / n - c.u, sv / n - c.v) < 1.0);
    }
  }
}

TEST_CASE("annotations carry projected heads") {
  SimConfig cfg;
  cfg.n_fish = 2;
  cfg.duration_s = 0.5;
  const SyntheticSequence seq = simulate(cfg);
  const GroundTruth gt = annotate(seq);
  const GtEntry& e = gt.frames.at(3).at(2);
  CHECK(e.point == seq.frames[3][1].head);
  CHECK(distance(e.top.head, seq.rig.top.project(e.point)) < 1e-9);
  CHECK(distance(e.front.head, seq.rig.front.project(e.point)) < 1e-9);
  const DetectionSet d = gt_detections(gt);
  CHECK(d.top.at(3).size() == 2);
  CHECK(d.front.at(3)[1].head == e.front.head);
}

TEST_CASE("detection degradation") {
  SimConfig cfg;
  cfg.n_fish = 5;
  cfg.duration_s = 20;
  const SyntheticSequence seq = simulate(cfg);
  const GroundTruth gt = annotate(seq);
  const DetectionSet clean = gt_detections(gt);
  auto count = [](const DetectionSet& d) {
    std::size_t n = 0;
    for (View v : {View::Top, View::Front})
      for (const auto& [f, list] : d.of(v)) n += list.size();
    return n;
  };
  const std::size_t total = count(clean);
  REQUIRE(total >= 10000);

  const DetectionSet same = degrade(clean, {}, seq.rig, gt.n_frames, 1);
  CHECK(count(same) == total);
  CHECK(same.top.at(7)[2].head == clean.top.at(7)[2].head);

  CHECK(count(degrade(clean, {1.0, 0, 0}, seq.rig, gt.n_frames, 1)) == 0);

  const double kept = static_cast<double>(count(degrade(clean, {0.3, 0, 0}, seq.rig, gt.n_frames, 1))) / total;
  CHECK(std::abs(kept - 0.7) < 0.02);

  const DetectionSet a = degrade(clean, {0.1, 2.0, 0.5}, seq.rig, gt.n_frames, 8);
  const DetectionSet b = degrade(clean, {0.1, 2.0, 0.5}, seq.rig, gt.n_frames, 8);
  REQUIRE(count(a) == count(b));
  for (const auto& [f, list] : a.front)
    for (std::size_t k = 0; k < list.size(); ++k) {
      CHECK(list[k].head == b.front.at(f)[k].head);
      CHECK(seq.rig.front.in_image(list[k].head));
    }
}

TEST_CASE("simulation config is validated") {
  SimConfig cfg;
  cfg.n_fish = 0;
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.speed = -1;
  CHECK_THROWS(cfg.validate());
  cfg = {};
  cfg.n_fish = 20;
  cfg.separate_lanes = true;
  CHECK_THROWS(cfg.validate());
}
