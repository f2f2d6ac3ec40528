// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ft3d/groundtruth.hpp"

namespace ft3d {

/// Inclusive frame range of one occlusion event.
struct OcclusionEvent {
  int start = 0;
  int end = 0;
  int length() const { return end - start + 1; }
  friend bool operator==(const OcclusionEvent&, const OcclusionEvent&) = default;
};

/// Maximal runs of occlusion-flagged frames, per fish.
std::map<int, std::vector<OcclusionEvent>> occlusion_events(const GroundTruth& gt, View view);

struct ComplexityStats {
  double oc = 0.0;   // events per second
  double ol = 0.0;   // mean event length, s
  double tbo = 0.0;  // mean time between events, s
  double ibo = 0.0;  // mean overlap fraction over flagged fish-frames
};

/// TBO pools the gaps of every fish with at least one event, counting the
/// lead-in before the first event and the tail after the last when they are
/// non-empty. Without any event TBO is the sequence duration.
ComplexityStats complexity_stats(const GroundTruth& gt, View view);

/// Mean of OC*OL*IBO/TBO over the two views.
double complexity_psi(const ComplexityStats& top, const ComplexityStats& front);

struct ComplexityReport {
  ComplexityStats top;
  ComplexityStats front;
  double psi = 0.0;
};

ComplexityReport complexity_report(const GroundTruth& gt);

}  // namespace ft3d
