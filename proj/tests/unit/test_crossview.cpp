// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

#include "ft3d/crossview.hpp"

using namespace ft3d;

namespace {

const StereoRig kRig = make_default_rig();
const TankBounds kTank;

Tracklet2D tracklet(int id, View view, int first, int last, const std::function<Point3D(int)>& path,
                    Point2D offset = {}) {
  Tracklet2D t;
  t.id = id;
  t.view = view;
  const CameraModel& cam = view == View::Top ? kRig.top : kRig.front;
  for (int f = first; f <= last; ++f) {
    Detection d;
    d.frame = f;
    d.view = view;
    const Point2D p = cam.project(path(f));
    d.head = {p.u + offset.u, p.v + offset.v};
    d.candidates = {d.head};
    d.centroid = d.head;
    t.detections[f] = d;
  }
  return t;
}

Point3D still(int) { return {10, 12, 5}; }

FrameMatch match_at(int frame, Point3D p) {
  FrameMatch m;
  m.frame = frame;
  m.point = p;
  m.valid = true;
  return m;
}

}  // namespace

TEST_CASE("frame intersection") {
  const Tracklet2D a = tracklet(0, View::Top, 1, 10, still);
  const Tracklet2D b = tracklet(0, View::Front, 5, 15, still);
  CHECK(frame_intersection(a, b) == std::vector<int>{5, 6, 7, 8, 9, 10});
  CHECK(frame_intersection(a, a).size() == 10);
  const Tracklet2D c = tracklet(1, View::Front, 20, 30, still);
  CHECK(frame_intersection(a, c).empty());
  CHECK_FALSE(node_weight(a, c, kRig, kTank, 1 / 8.03).has_value());
  CHECK(extents_overlap(a, b));
  CHECK_FALSE(extents_overlap(a, c));
}

TEST_CASE("median convention") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  CHECK_THROWS(median({}));
}

TEST_CASE("node weight hand examples") {
  const Tracklet2D top = tracklet(0, View::Top, 0, 9, still);
  SUBCASE("exact projections on identical frames give weight one") {
    const Tracklet2D front = tracklet(0, View::Front, 0, 9, still);
    const auto n = node_weight(top, front, kRig, kTank, 1 / 8.03);
    REQUIRE(n.has_value());
    CHECK(n->weight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n->union_size == 10);
  }
  SUBCASE("five frames at the characteristic error out of ten") {
    const Tracklet2D front = tracklet(0, View::Front, 5, 9, still, {0, 6});
    const double err = triangulate(top.detections.at(5).head, front.detections.at(5).head, kRig.top, kRig.front)
                           .reprojection_error;
    REQUIRE(err > 0.0);
    const auto n = node_weight(top, front, kRig, kTank, 1.0 / err);
    REQUIRE(n.has_value());
    CHECK(n->weights.size() == 5);
    for (double w : n->weights) CHECK(w == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(n->weight == doctest::Approx(0.18394).epsilon(1e-4));
  }
  SUBCASE("points outside the tank reject the node") {
    auto above = [](int) { return Point3D{10, 12, 25}; };
    const Tracklet2D t = tracklet(0, View::Top, 0, 9, above);
    const Tracklet2D f = tracklet(0, View::Front, 0, 9, above);
    CHECK_FALSE(node_weight(t, f, kRig, kTank, 1 / 8.03).has_value());
  }
}

TEST_CASE("edge weight hand examples") {
  NodeCandidate a, b;
  a.weight = 0.3;
  b.weight = 0.4;
  a.matches = {match_at(10, {5, 5, 5})};
  b.matches = {match_at(11, {5, 5, 5})};
  CHECK(edge_weight(a, b, 1 / 4.45, 25, 60) == doctest::Approx(std::exp(-1.0 / 25) * 0.7).epsilon(1e-12));
  CHECK(std::exp(-1.0 / 25) == doctest::Approx(0.9608).epsilon(1e-4));

  b.matches = {match_at(10, {5, 5, 5})};
  CHECK(edge_weight(a, b, 1 / 4.45, 25, 60) == doctest::Approx(std::exp(-1.0 / 25) * 0.7).epsilon(1e-12));

  b.matches = {match_at(35, {5, 5 + 4.45 * 25.0 / 60.0, 5})};
  CHECK(edge_weight(a, b, 1 / 4.45, 25, 60) == doctest::Approx(std::exp(-2.0) * 0.7).epsilon(1e-12));
  CHECK(std::exp(-2.0) == doctest::Approx(0.1353).epsilon(1e-3));
}

TEST_CASE("graph construction") {
  AssocParams p;
  SUBCASE("one pair gives one node and no edge") {
    const auto g = build_graph({tracklet(0, View::Top, 0, 20, still)}, {tracklet(0, View::Front, 0, 20, still)}, p,
                               kRig, kTank);
    CHECK(g.nodes.size() == 1);
    CHECK(g.edges.empty());
  }
  SUBCASE("short tracklets are dropped") {
    const auto g = build_graph({tracklet(0, View::Top, 0, 8, still)}, {tracklet(0, View::Front, 0, 20, still)}, p,
                               kRig, kTank);
    CHECK(g.nodes.empty());
  }
  SUBCASE("two top and three front tracklets") {
    auto fish1 = [](int f) { return Point3D{8 + 0.01 * f, 10, 5}; };
    auto fish2 = [](int f) { return Point3D{20 - 0.01 * f, 20, 9}; };
    const std::vector<Tracklet2D> top = {tracklet(0, View::Top, 0, 199, fish1),
                                         tracklet(1, View::Top, 0, 199, fish2)};
    const std::vector<Tracklet2D> front = {tracklet(0, View::Front, 0, 59, fish1),
                                           tracklet(1, View::Front, 70, 129, fish1),
                                           tracklet(2, View::Front, 140, 199, fish2)};
    const auto g = build_graph(top, front, p, kRig, kTank);
    REQUIRE(g.nodes.size() == 6);
    std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> edges;
    for (const DagEdge& e : g.edges) {
      const auto& a = g.nodes[e.from];
      const auto& b = g.nodes[e.to];
      edges.insert({{a.top_id, a.front_id}, {b.top_id, b.front_id}});
      CHECK(e.weight > 0.0);
    }
    const std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> expected = {
        {{0, 0}, {0, 1}}, {{0, 0}, {0, 2}}, {{0, 1}, {0, 2}},
        {{1, 0}, {1, 1}}, {{1, 0}, {1, 2}}, {{1, 1}, {1, 2}}};
    CHECK(edges == expected);
    CHECK_NOTHROW(topological_order(g.dag(), std::vector<char>(6, 1)));

    // Any positive node extends a path, so the mismatched tail (0, 2) is
    // appended with a vanishing weight.
    const auto out = extract_3d_tracklets(g, top, front);
    REQUIRE_FALSE(out.empty());
    REQUIRE(out[0].nodes.size() >= 2);
    CHECK(g.nodes[out[0].nodes[0]].front_id == 0);
    CHECK(g.nodes[out[0].nodes[1]].front_id == 1);
    for (const auto& [f, e] : out[0].frames)
      if (e.point && f < 130) CHECK(distance(*e.point, fish1(f)) < 1e-6);
  }
}

TEST_CASE("path extraction") {
  Dag dag;
  dag.node_weights = {1, 2, 3};
  dag.edges = {{0, 1, 1}, {0, 2, 5}};
  SUBCASE("independent node survives") {
    dag.tracklets = {{{0, 1}}, {{2, 3}}, {{4, 5}}};
    const auto paths = extract_paths(dag);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].nodes == std::vector<int>{0, 2});
    CHECK(paths[0].score == 9.0);
    CHECK(paths[1].nodes == std::vector<int>{1});
    CHECK(paths[1].score == 2.0);
  }
  SUBCASE("node sharing a tracklet is removed") {
    dag.tracklets = {{{0, 1}}, {{0, 3}}, {{0, 5}}};
    const auto paths = extract_paths(dag);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].nodes == std::vector<int>{0, 2});
  }
  SUBCASE("ties go to the lexicographically smaller sequence") {
    Dag t;
    t.node_weights = {1, 1, 1};
    t.tracklets = {{{0, 1}}, {{2, 3}}, {{4, 5}}};
    const auto best = longest_path(t, std::vector<char>(3, 1));
    REQUIRE(best.has_value());
    CHECK(best->nodes == std::vector<int>{0});
  }
  SUBCASE("cycles are rejected") {
    Dag c;
    c.node_weights = {1, 1};
    c.tracklets = {{{0, 1}}, {{2, 3}}};
    c.edges = {{0, 1, 1}, {1, 0, 1}};
    CHECK_THROWS_AS(topological_order(c, std::vector<char>(2, 1)), std::logic_error);
  }
}

TEST_CASE("single node becomes one 3D tracklet") {
  const std::vector<Tracklet2D> top = {tracklet(0, View::Top, 0, 20, still)};
  const std::vector<Tracklet2D> front = {tracklet(0, View::Front, 5, 25, still)};
  const auto out = associate_views(top, front, AssocParams{}, kRig, kTank);
  REQUIRE(out.size() == 1);
  CHECK(out[0].nodes == std::vector<int>{0});
  CHECK(out[0].point_count() == 16);
  CHECK(out[0].frames.size() == 26);
  CHECK(out[0].frames.at(0).top.has_value());
  CHECK_FALSE(out[0].frames.at(0).point.has_value());
  CHECK(out[0].frames.at(25).front.has_value());
  CHECK(distance(*out[0].frames.at(10).point, still(10)) < 1e-6);
}

TEST_CASE("association parameters are validated") {
  AssocParams p;
  p.tau_p = 0;
  CHECK_THROWS(p.validate());
  p = {};
  p.alpha = -1;
  CHECK_THROWS(p.validate());
}
