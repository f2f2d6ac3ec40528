// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ft3d/types.hpp"

namespace ft3d {

/// One 2D observation of a fish in one view.
///
/// Top-view detections carry a single candidate (the head keypoint). Front
/// view blob detections carry three: centroid first, then the two head
/// proxies. Detections built from head points carry just the head.
struct Detection {
  int frame = 0;
  View view = View::Top;
  Point2D head;
  std::vector<Point2D> candidates;
  Point2D centroid;
  std::optional<Cov2> cov;
  std::optional<BBox> bbox;
  std::optional<double> confidence;  // [0, 100]
};

/// frame -> detections of one view, frames ascending.
using FrameDetections = std::map<int, std::vector<Detection>>;

struct DetectionSet {
  FrameDetections top;
  FrameDetections front;

  FrameDetections& of(View v) { return v == View::Top ? top : front; }
  const FrameDetections& of(View v) const { return v == View::Top ? top : front; }
};

}  // namespace ft3d
