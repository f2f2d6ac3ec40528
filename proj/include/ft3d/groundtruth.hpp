// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

#include <map>

#include "ft3d/types.hpp"

namespace ft3d {

struct GtView {
  BBox bbox;
  Point2D head;
  bool occluded = false;
};

struct GtEntry {
  GtView top;
  GtView front;
  Point3D point;

  GtView& of(View v) { return v == View::Top ? top : front; }
  const GtView& of(View v) const { return v == View::Top ? top : front; }
};

/// Per-frame, per-fish annotations. Frames run 0 .. n_frames-1.
struct GroundTruth {
  double fps = 60.0;
  int n_frames = 0;
  int n_fish = 0;
  std::map<int, std::map<int, GtEntry>> frames;  // frame -> fish id -> entry

  double duration() const { return n_frames / fps; }
};

}  // namespace ft3d
