// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

#include <map>
#include <vector>

#include "ft3d/detection.hpp"

namespace ft3d {

enum class DistanceMode {
  EuclideanHead,       // l2 between head points, px
  MahalanobisCentroid  // centroid offset in std-devs of the previous blob covariance
};

struct Track2DParams {
  double delta_top = 15.0;    // px
  double delta_front = 15.0;  // px, or std-devs in Mahalanobis mode (0.5 for the Naive detector)
  int tau_k = 10;             // max missing frames before termination
  DistanceMode top_mode = DistanceMode::EuclideanHead;
  DistanceMode front_mode = DistanceMode::EuclideanHead;

  double gate(View v) const { return v == View::Top ? delta_top : delta_front; }
  DistanceMode mode(View v) const { return v == View::Top ? top_mode : front_mode; }
  void validate() const;
};

struct Tracklet2D {
  int id = 0;
  View view = View::Top;
  std::map<int, Detection> detections;  // frame -> detection, at most one per frame

  int first_frame() const { return detections.begin()->first; }
  int last_frame() const { return detections.rbegin()->first; }
  std::size_t size() const { return detections.size(); }
  bool contains(int frame) const { return detections.count(frame) != 0; }
};

/// sqrt(d^T cov^-1 d); a non-positive-definite cov is regularised by 1e-6 I.
double mahalanobis(const Point2D& p, const Point2D& center, const Cov2& cov);

/// Distance used for gating a detection against a tracklet's last detection.
double tracklet_distance(const Detection& last, const Detection& candidate, DistanceMode mode);

/// Conservative per-view tracklets by gated frame-to-frame assignment.
/// A tracklet survives up to tau_k consecutive frames without a detection.
/// Returned tracklets are ordered by id (creation order).
std::vector<Tracklet2D> build_tracklets(const FrameDetections& frames, View view, const Track2DParams& params);

}  // namespace ft3d
