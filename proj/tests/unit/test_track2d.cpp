// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ft3d/hungarian.hpp"
#include "ft3d/track2d.hpp"

using namespace ft3d;

namespace {

Detection det(int frame, double u, double v) {
  Detection d;
  d.frame = frame;
  d.head = {u, v};
  d.candidates = {d.head};
  d.centroid = d.head;
  return d;
}

double brute_force(const std::vector<double>& c, int rows, int cols) {
  const int k = std::min(rows, cols);
  std::vector<int> idx(std::max(rows, cols));
  std::iota(idx.begin(), idx.end(), 0);
  double best = 1e300;
  do {
    double s = 0;
    for (int i = 0; i < k; ++i) s += rows <= cols ? c[i * cols + idx[i]] : c[idx[i] * cols + i];
    best = std::min(best, s);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

}  // namespace

TEST_CASE("hungarian hand examples") {
  const std::vector<double> a = {1, 2, 3, 0};
  const Assignment r = hungarian(a, 2, 2);
  CHECK(r.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  CHECK(r.total_cost == 1.0);

  const std::vector<double> eye = {0, 1, 1, 1, 0, 1, 1, 1, 0};
  const Assignment e = hungarian(eye, 3, 3);
  CHECK(e.pairs == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}});
  CHECK(e.total_cost == 0.0);

  const std::vector<double> wide = {5, 1, 9};
  CHECK(hungarian(wide, 1, 3).pairs == std::vector<std::pair<int, int>>{{0, 1}});
  const std::vector<double> tall = {5, 1, 9};
  CHECK(hungarian(tall, 3, 1).pairs == std::vector<std::pair<int, int>>{{1, 0}});
  CHECK(hungarian({}, 0, 0).pairs.empty());
}

TEST_CASE("hungarian matches brute force on small random matrices") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 6), val(0, 20);
  for (int rep = 0; rep < 200; ++rep) {
    const int r = dim(rng), c = dim(rng);
    std::vector<double> cost(r * c);
    for (double& x : cost) x = val(rng);
    const Assignment a = hungarian(cost, r, c);
    CHECK(a.pairs.size() == static_cast<std::size_t>(std::min(r, c)));
    CHECK(a.total_cost == brute_force(cost, r, c));
  }
}

TEST_CASE("mahalanobis distance") {
  CHECK(mahalanobis({3, 4}, {0, 0}, Cov2{1, 0, 1}) == doctest::Approx(5.0));
  CHECK(mahalanobis({2, 0}, {0, 0}, Cov2{4, 0, 1}) == doctest::Approx(1.0));
  CHECK(mahalanobis({1, 1}, {1, 1}, Cov2{2, 0.5, 3}) == 0.0);
  CHECK(std::isfinite(mahalanobis({1, 0}, {0, 0}, Cov2{0, 0, 0})));
}

TEST_CASE("tracklets follow a drifting detection") {
  FrameDetections frames;
  for (int f = 0; f < 100; ++f) frames[f].push_back(det(f, 100 + f, 200));
  const auto t = build_tracklets(frames, View::Top, Track2DParams{});
  REQUIRE(t.size() == 1);
  CHECK(t[0].size() == 100);
  CHECK(t[0].first_frame() == 0);
  CHECK(t[0].last_frame() == 99);
}

TEST_CASE("a jump beyond the gate starts a new tracklet") {
  FrameDetections frames;
  for (int f = 0; f < 100; ++f) frames[f].push_back(det(f, f < 50 ? 100 : 150, 200));
  const auto t = build_tracklets(frames, View::Top, Track2DParams{});
  REQUIRE(t.size() == 2);
  CHECK(t[0].last_frame() == 49);
  CHECK(t[1].first_frame() == 50);
}

TEST_CASE("a gap of tau_k frames is bridged, a longer one is not") {
  Track2DParams p;
  p.tau_k = 10;
  for (int gap : {10, 11}) {
    FrameDetections frames;
    for (int f = 0; f < 20; ++f) frames[f].push_back(det(f, 100, 100));
    for (int f = 20 + gap; f < 40 + gap; ++f) frames[f].push_back(det(f, 103, 100));
    const auto t = build_tracklets(frames, View::Top, p);
    CHECK(t.size() == (gap == 10 ? 1u : 2u));
  }
}

TEST_CASE("two crossing-free fish stay separate") {
  FrameDetections frames;
  for (int f = 0; f < 50; ++f) {
    frames[f].push_back(det(f, 100 + f, 100));
    frames[f].push_back(det(f, 100 + f, 140));
  }
  const auto t = build_tracklets(frames, View::Front, Track2DParams{});
  REQUIRE(t.size() == 2);
  for (const Tracklet2D& tr : t) {
    CHECK(tr.view == View::Front);
    CHECK(tr.size() == 50);
    const double v = tr.detections.begin()->second.head.v;
    for (const auto& [f, d] : tr.detections) CHECK(d.head.v == v);
  }
}

TEST_CASE("mahalanobis gating uses the previous blob covariance") {
  Track2DParams p;
  p.front_mode = DistanceMode::MahalanobisCentroid;
  p.delta_front = 0.5;
  FrameDetections frames;
  for (int f = 0; f < 10; ++f) {
    Detection d = det(f, 100 + f * 0.5, 100);
    d.cov = Cov2{16, 0, 4};
    frames[f].push_back(d);
  }
  CHECK(build_tracklets(frames, View::Front, p).size() == 1);
  p.delta_front = 0.1;
  CHECK(build_tracklets(frames, View::Front, p).size() == 10);
}

TEST_CASE("track2d parameters are validated") {
  Track2DParams p;
  p.tau_k = -1;
  CHECK_THROWS(p.validate());
  p = {};
  p.delta_top = 0;
  CHECK_THROWS(p.validate());
}
