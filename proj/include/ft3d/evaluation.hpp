// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ft3d/groundtruth.hpp"

namespace ft3d {

/// frame -> object id -> position. 2D positions use (u, v, 0).
using FrameObjects = std::map<int, std::map<int, Point3D>>;

/// Ground-truth positions: 3D heads when `view` is empty, else that view's
/// 2D head points.
FrameObjects gt_objects(const GroundTruth& gt, std::optional<View> view = std::nullopt);

struct Match {
  int gt_id = 0;
  int pred_id = 0;
  double dist = 0.0;
  bool switched = false;  // gt was last matched to a different prediction
};

struct FrameCorrespondence {
  int frame = 0;
  std::vector<Match> matches;  // sorted by gt id
  std::vector<int> missed;     // gt ids
  std::vector<int> false_pos;  // pred ids
};

/// Per-frame gated matching with CLEAR-MOT persistence. A pair from the
/// previous match of a gt object is kept while within `thresh`; the rest
/// is solved by minimum squared distance.
std::vector<FrameCorrespondence> match_frames(const FrameObjects& pred, const FrameObjects& gt, double thresh);

struct ClearMot {
  double mota = 0.0;  // %
  double motp = 0.0;  // mean matched distance
  double precision = 0.0;
  double recall = 0.0;
  long gt_total = 0;
  long tp = 0;
  long fp = 0;
  long fn = 0;
  long idsw = 0;
  long frag = 0;
};

ClearMot clear_mot(const std::vector<FrameCorrespondence>& corr);

struct IdMetrics {
  double idp = 0.0;
  double idr = 0.0;
  double idf1 = 0.0;
  long idtp = 0;
  long idfp = 0;
  long idfn = 0;
};

IdMetrics id_metrics(const FrameObjects& pred, const FrameObjects& gt, double thresh);

struct MtMl {
  int mt = 0;
  int ml = 0;
  int pt = 0;
};

MtMl mt_ml(const std::vector<FrameCorrespondence>& corr);

struct Mtbf {
  double mtbf_s = 0.0;  // frames
  double mtbf_m = 0.0;  // frames
};

/// Correctly tracked segments are maximal runs of a gt object's frames
/// matched to one prediction id; a miss or an id change ends a segment.
/// Each gt object gets its own ratio and the result is their mean.
Mtbf mtbf(const std::vector<FrameCorrespondence>& corr);

struct EvalReport {
  ClearMot mot;
  IdMetrics id;
  MtMl mtml;
  Mtbf mtbf;
  double thresh = 0.0;
  int n_gt_tracks = 0;
};

EvalReport evaluate(const FrameObjects& pred, const FrameObjects& gt, double thresh);

/// Ground truth minus occluded (fish, frame) entries. For 3D output a fish
/// counts as occluded when flagged in either view. With `new_id_after_gap`
/// every visible run gets a fresh id.
FrameObjects oracle_tracks(const GroundTruth& gt, std::optional<View> view = std::nullopt,
                           bool new_id_after_gap = false);

}  // namespace ft3d
