// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/track2d.hpp"

#include <cmath>
#include <stdexcept>

#include "ft3d/hungarian.hpp"

namespace ft3d {

void Track2DParams::validate() const {
  if (!(delta_top > 0.0)) throw std::invalid_argument("track2d.delta_top must be positive");
  if (!(delta_front > 0.0)) throw std::invalid_argument("track2d.delta_front must be positive");
  if (tau_k <= 0) throw std::invalid_argument("track2d.tau_k must be positive");
}

double mahalanobis(const Point2D& p, const Point2D& center, const Cov2& cov) {
  double a = cov.xx, b = cov.xy, d = cov.yy;
  double det = a * d - b * b;
  if (!(a > 0.0) || !(det > 0.0)) {
    constexpr double kEps = 1e-6;
    a += kEps;
    d += kEps;
    det = a * d - b * b;
    if (!(det > 0.0)) throw std::invalid_argument("mahalanobis: covariance is not positive semi-definite");
  }
  const double dx = p.u - center.u, dy = p.v - center.v;
  // inverse of [[a b][b d]] is [[d -b][-b a]] / det
  const double q = (d * dx * dx - 2.0 * b * dx * dy + a * dy * dy) / det;
  return std::sqrt(std::max(0.0, q));
}

double tracklet_distance(const Detection& last, const Detection& candidate, DistanceMode mode) {
  if (mode == DistanceMode::MahalanobisCentroid)
    return mahalanobis(candidate.centroid, last.centroid, last.cov.value_or(Cov2{}));
  return distance(candidate.head, last.head);
}

std::vector<Tracklet2D> build_tracklets(const FrameDetections& frames, View view, const Track2DParams& params) {
  params.validate();
  const double gate = params.gate(view);
  const DistanceMode mode = params.mode(view);

  std::vector<Tracklet2D> tracklets;
  std::vector<int> live;  // indices into tracklets, ascending id
  std::vector<double> cost;

  for (const auto& [frame, dets] : frames) {
    std::erase_if(live, [&](int t) { return frame - tracklets[t].last_frame() - 1 > params.tau_k; });

    const int rows = static_cast<int>(live.size());
    const int cols = static_cast<int>(dets.size());
    std::vector<char> taken(dets.size(), 0);
    if (rows > 0 && cols > 0) {
      cost.assign(static_cast<std::size_t>(rows) * cols, kForbiddenCost);
      for (int r = 0; r < rows; ++r) {
        const Detection& last = tracklets[live[r]].detections.rbegin()->second;
        for (int c = 0; c < cols; ++c) {
          const double dist = tracklet_distance(last, dets[c], mode);
          if (dist <= gate) cost[static_cast<std::size_t>(r) * cols + c] = dist;
        }
      }
      const Assignment a = hungarian(cost, rows, cols);
      for (const auto& [r, c] : a.pairs) {
        if (cost[static_cast<std::size_t>(r) * cols + c] >= kForbiddenCost) continue;
        Detection d = dets[c];
        d.frame = frame;
        d.view = view;
        tracklets[live[r]].detections.emplace(frame, std::move(d));
        taken[c] = 1;
      }
    }
    for (int c = 0; c < cols; ++c) {
      if (taken[c]) continue;
      const int id = static_cast<int>(tracklets.size());
      Tracklet2D t;
      t.id = id;
      t.view = view;
      Detection d = dets[c];
      d.frame = frame;
      d.view = view;
      t.detections.emplace(frame, std::move(d));
      tracklets.push_back(std::move(t));
      live.push_back(id);
    }
  }
  return tracklets;
}

}  // namespace ft3d
