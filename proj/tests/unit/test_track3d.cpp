// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ft3d/track3d.hpp"

using namespace ft3d;

namespace {

PointTrack line(int id, int first, int last, Point3D start = {}, Point3D step = {}) {
  PointTrack t;
  t.id = id;
  for (int f = first; f <= last; ++f) {
    const double k = f - first;
    t.points[f] = {start.x + k * step.x, start.y + k * step.y, start.z + k * step.z};
  }
  return t;
}

Track3D main_of(const PointTrack& p, int fish) {
  Track3D t;
  t.fish_id = fish;
  t.points = p.points;
  t.sources = {p.id};
  return t;
}

Tracklet3D as_tracklet(const PointTrack& p) {
  Tracklet3D t;
  t.id = p.id;
  for (const auto& [f, pt] : p.points) t.frames[f].point = pt;
  return t;
}

}  // namespace

TEST_CASE("temporal overlap") {
  CHECK(temporal_overlap(0, 9, 5, 20) == 5);
  CHECK(temporal_overlap(0, 9, 10, 20) == 0);
  CHECK(temporal_overlap(0, 899, 0, 899) == 900);
}

TEST_CASE("initial selection") {
  StitchParams p;
  SUBCASE("full-length tracklets") {
    p.n_fish = 5;
    std::vector<PointTrack> t;
    for (int i = 0; i < 5; ++i) t.push_back(line(i, 0, 899));
    const auto sel = select_initial(t, p);
    REQUIRE(sel.has_value());
    CHECK(*sel == std::vector<int>{0, 1, 2, 3, 4});
  }
  SUBCASE("too few concurrent tracklets") {
    p.n_fish = 5;
    std::vector<PointTrack> t;
    for (int i = 0; i < 4; ++i) t.push_back(line(i, 0, 899));
    CHECK_FALSE(select_initial(t, p).has_value());
  }
  SUBCASE("larger median overlap wins") {
    p.n_fish = 3;
    p.main_fraction = 1.0;
    std::vector<PointTrack> t;
    for (int i = 0; i < 3; ++i) t.push_back(line(i, 0, 299));
    for (int i = 3; i < 6; ++i) t.push_back(line(i, 1000, 1499));
    const auto sel = select_initial(t, p);
    REQUIRE(sel.has_value());
    CHECK(*sel == std::vector<int>{3, 4, 5});
  }
  SUBCASE("a single fish takes the longest tracklet") {
    p.n_fish = 1;
    const auto sel = select_initial({line(0, 0, 10), line(1, 20, 80), line(2, 90, 99)}, p);
    REQUIRE(sel.has_value());
    CHECK(*sel == std::vector<int>{1});
  }
  SUBCASE("marginal overlap does not count as concurrent") {
    p.n_fish = 2;
    p.main_fraction = 1.0;
    CHECK_FALSE(select_initial({line(0, 0, 99), line(1, 95, 194)}, p).has_value());
  }
}

TEST_CASE("gallery ranking") {
  const std::vector<Track3D> mains = {main_of(line(0, 0, 100), 1), main_of(line(1, 0, 100), 2)};
  const std::vector<PointTrack> gallery = {line(10, 50, 60), line(11, 120, 130), line(12, 101, 110),
                                           line(13, 121, 125)};
  CHECK(gallery_rank(gallery, mains) == std::vector<int>{2, 1, 3, 0});
}

TEST_CASE("measure normalisation") {
  const auto n = normalize_measure({1, 3});
  CHECK(n[0] == doctest::Approx(0.25));
  CHECK(n[1] == doctest::Approx(0.75));
  const auto z = normalize_measure({0, 0, 0, 0});
  for (double v : z) CHECK(v == doctest::Approx(0.25));
}

TEST_CASE("margin rule") {
  AssignmentCost c;
  c.cost = {0.495, 0.505};
  c.valid = {1, 1};
  CHECK_FALSE(choose_main(c, 0.02).has_value());
  c.cost = {0.3, 0.7};
  CHECK(choose_main(c, 0.02) == 0);
  c.cost = {0.5, 0.5};
  CHECK_FALSE(choose_main(c, 0.02).has_value());
  c.cost = {0.9, 0.0};
  c.valid = {1, 0};
  CHECK(choose_main(c, 0.02) == 0);
  c.valid = {0, 0};
  CHECK_FALSE(choose_main(c, 0.02).has_value());
}

TEST_CASE("internal switch cost") {
  std::map<int, Point3D> origin;
  for (int f = 0; f < 20; f += 2) origin[f] = {0, 0, 0};
  SUBCASE("interleaved constant tracks switch at distance five") {
    PointTrack g;
    for (int f = 1; f < 20; f += 2) g.points[f] = {3, 4, 0};
    const SwitchCost c = internal_switch_cost(g, origin);
    CHECK(c.mean == doctest::Approx(5.0));
    CHECK(c.in == doctest::Approx(5.0));
    CHECK(c.out == doctest::Approx(5.0));
  }
  SUBCASE("shared frames without a switch fall back to the mean distance") {
    PointTrack g;
    for (int f = 0; f < 20; f += 2) g.points[f] = {3, 4, 0};
    CHECK(internal_switch_cost(g, origin).mean == doctest::Approx(5.0));
  }
  SUBCASE("coincident tracks") {
    PointTrack g;
    for (int f = 0; f < 20; ++f) g.points[f] = {0, 0, 0};
    CHECK(internal_switch_cost(g, origin).mean == 0.0);
  }
  SUBCASE("disjoint extents") {
    CHECK(std::isinf(internal_switch_cost(line(0, 50, 60), origin).mean));
  }
}

TEST_CASE("assignment cost picks the nearby main") {
  const std::vector<Track3D> mains = {main_of(line(0, 0, 100, {0, 0, 0}), 1), main_of(line(1, 0, 100, {20, 0, 0}), 2)};
  const AssignmentCost c = assignment_cost(line(5, 103, 150, {0.2, 0, 0}), mains);
  CHECK_FALSE(c.all_overlap);
  REQUIRE(c.valid == std::vector<char>{1, 1});
  CHECK(c.cost[0] + c.cost[1] == doctest::Approx(1.0));
  CHECK(choose_main(c, 0.02) == 0);
}

TEST_CASE("stitching") {
  StitchParams p;
  SUBCASE("single fish chain") {
    p.n_fish = 1;
    const std::vector<Tracklet3D> in = {as_tracklet(line(0, 0, 99, {1, 1, 1}, {0.01, 0, 0})),
                                        as_tracklet(line(1, 105, 199, {2.05, 1, 1}, {0.01, 0, 0})),
                                        as_tracklet(line(2, 210, 300, {3.1, 1, 1}, {0.01, 0, 0}))};
    const auto tracks = associate(in, p);
    REQUIRE(tracks.size() == 1);
    CHECK(tracks[0].points.size() == 100 + 95 + 91);
    CHECK(tracks[0].first_frame() == 0);
    CHECK(tracks[0].last_frame() == 300);
  }
  SUBCASE("two fish, fragments go to the right fish and an ambiguous one is dropped") {
    p.n_fish = 2;
    const std::vector<Tracklet3D> in = {
        as_tracklet(line(0, 0, 199, {5, 5, 5}, {0.01, 0, 0})),
        as_tracklet(line(1, 0, 199, {5, 25, 5}, {0.01, 0, 0})),
        as_tracklet(line(2, 205, 300, {7.05, 5, 5}, {0.01, 0, 0})),
        as_tracklet(line(3, 203, 300, {7.03, 25, 5}, {0.01, 0, 0})),
        as_tracklet(line(4, 201, 210, {7.01, 15, 5})),
    };
    const auto tracks = associate(in, p);
    REQUIRE(tracks.size() == 2);
    for (const Track3D& t : tracks) {
      const double y = t.points.begin()->second.y;
      for (const auto& [f, pt] : t.points) CHECK(pt.y == y);
      CHECK(t.last_frame() == 300);
      CHECK(std::find(t.sources.begin(), t.sources.end(), 4) == t.sources.end());
    }
  }
  SUBCASE("scaling the scene does not change the result") {
    p.n_fish = 2;
    std::vector<PointTrack> base = {line(0, 0, 199, {5, 5, 5}, {0.01, 0, 0}), line(1, 0, 199, {5, 12, 5}, {0.01, 0, 0}),
                                    line(2, 210, 300, {7, 6, 5}, {0.01, 0, 0}), line(3, 150, 260, {6, 11, 5})};
    auto run = [&](double s) {
      std::vector<Tracklet3D> in;
      for (PointTrack t : base) {
        for (auto& [f, pt] : t.points) pt = {pt.x * s, pt.y * s, pt.z * s};
        in.push_back(as_tracklet(t));
      }
      std::vector<std::vector<int>> src;
      for (const Track3D& t : associate(in, p)) src.push_back(t.sources);
      return src;
    };
    CHECK(run(1.0) == run(10.0));
  }
  SUBCASE("no concurrent set falls back to the raw tracklets") {
    p.n_fish = 3;
    const std::vector<Tracklet3D> in = {as_tracklet(line(0, 0, 9)), as_tracklet(line(1, 20, 29))};
    CHECK(associate(in, p).size() == 2);
  }
}

TEST_CASE("stitch parameters are validated") {
  StitchParams p;
  p.n_fish = 0;
  CHECK_THROWS(p.validate());
  p = {};
  p.beta = -1;
  CHECK_THROWS(p.validate());
}
