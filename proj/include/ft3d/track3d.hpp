// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

// Greedy stitching of 3D tracklets into N_fish tracks.

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "ft3d/crossview.hpp"

namespace ft3d {

struct StitchParams {
  int n_fish = 1;
  double beta = 0.02;
  double main_fraction = 0.2;  // seeds come from the longest fraction of tracklets
  double overlap_scale = 0.2;  // pairwise overlap must exceed this times the shortest member

  void validate() const;
};

/// 3D points of one tracklet or track, keyed by frame.
struct PointTrack {
  int id = 0;
  std::map<int, Point3D> points;

  bool empty() const { return points.empty(); }
  int first_frame() const { return points.begin()->first; }
  int last_frame() const { return points.rbegin()->first; }
  int duration() const { return last_frame() - first_frame() + 1; }
};

PointTrack to_point_track(const Tracklet3D& t);

struct Track3D {
  int fish_id = 1;
  std::map<int, Point3D> points;
  std::vector<int> sources;  // contributing tracklet ids, merge order

  int first_frame() const { return points.begin()->first; }
  int last_frame() const { return points.rbegin()->first; }
};

/// Frames shared by the two extents (0 when disjoint).
int temporal_overlap(int a_first, int a_last, int b_first, int b_last);

/// Indices (ascending) of the selected main tracklets, or nothing when no
/// concurrent set of n_fish tracklets passes the overlap test.
std::optional<std::vector<int>> select_initial(const std::vector<PointTrack>& tracklets, const StitchParams& params);

/// Gallery indices ordered by the smallest frame gap to any main; a
/// gallery overlapping every main goes last. Stable.
std::vector<int> gallery_rank(const std::vector<PointTrack>& gallery, const std::vector<Track3D>& mains);

struct SwitchCost {
  double in = std::numeric_limits<double>::infinity();   // gallery -> main edges
  double out = std::numeric_limits<double>::infinity();  // main -> gallery edges
  double mean = std::numeric_limits<double>::infinity(); // over all switch edges
};

/// Shortest path through the per-frame layered graph of the two tracks over
/// their shared extent; reports the mean 3D step length where the path
/// changes source. A path that never switches falls back to the mean
/// distance over frames both tracks cover. Disjoint extents give infinity.
SwitchCost internal_switch_cost(const PointTrack& gallery, const std::map<int, Point3D>& main);

struct AssignmentCost {
  std::vector<double> cost;  // per main; meaningful only where valid
  std::vector<char> valid;
  bool all_overlap = false;  // second case: gallery overlaps every main
};

/// Divides by the sum; an all-zero measure becomes uniform.
std::vector<double> normalize_measure(const std::vector<double>& raw);

AssignmentCost assignment_cost(const PointTrack& gallery, const std::vector<Track3D>& mains);

/// Index of the chosen main, or nothing when the gallery is discarded.
std::optional<int> choose_main(const AssignmentCost& cost, double beta);

std::vector<Track3D> associate(const std::vector<Tracklet3D>& tracklets, const StitchParams& params);

}  // namespace ft3d
