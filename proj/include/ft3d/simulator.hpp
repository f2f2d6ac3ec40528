// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

// Synthetic stereo zebrafish scenes.

#include <cstdint>
#include <utility>
#include <vector>

#include "ft3d/detection.hpp"
#include "ft3d/geometry.hpp"
#include "ft3d/groundtruth.hpp"
#include "ft3d/image.hpp"

namespace ft3d {

struct FishBody {
  double half_length = 1.5;  // cm, along the heading
  double half_width = 0.35;  // cm
  double head_offset = 0.65;  // head point at this fraction of half_length ahead of the centre
};

struct SimConfig {
  int n_fish = 2;
  double duration_s = 15.0;
  double fps = 60.0;
  TankBounds tank{};
  double speed = 2.13;       // target mean speed, cm/s
  double reversion = 1.0;    // velocity mean-reversion rate, 1/s
  double turn_rate = 3.0;    // max heading rotation, rad/s
  FishBody body{};
  std::uint64_t seed = 1;
  bool separate_lanes = false;  // confine fish to disjoint x-lanes (no occlusions for 2 fish)

  int n_frames() const;
  void validate() const;
};

struct FishState {
  Point3D center;
  Point3D head;
  Point3D heading;  // unit vector
};

struct SyntheticSequence {
  SimConfig cfg;
  StereoRig rig;
  std::vector<std::vector<FishState>> frames;  // [frame][fish]
};

/// Ornstein-Uhlenbeck velocity per axis with walls reflecting the body
/// centre inside the tank shrunk by the body half length.
SyntheticSequence simulate(const SimConfig& cfg);

/// Image-plane body outline parameters for one fish in one view.
struct ProjectedFish {
  Point2D center;  // area centroid of the rendered shape
  Point2D axis;    // unit image direction from tail to head
  double half_length = 0.0;
  double half_width = 0.0;
  Point2D head;

  BBox bounds() const;
  /// True when (u, v) lies inside the rendered outline.
  bool contains(double u, double v) const;
};

ProjectedFish project_fish(const FishState& s, const FishBody& body, const CameraModel& cam);

/// Fish ids run 1..n_fish. Occlusion flags mark every fish whose box
/// intersects another fish's box in that view and frame.
GroundTruth annotate(const SyntheticSequence& seq);

struct RenderParams {
  std::uint8_t background = 200;
  std::uint8_t fish = 40;
  double noise_sigma = 2.0;
};

std::pair<GrayImage, GrayImage> render_frame(const SyntheticSequence& seq, int frame, const RenderParams& params = {});

/// Head-point detections taken straight from the annotations.
DetectionSet gt_detections(const GroundTruth& gt);

struct DegradeModel {
  double drop_rate = 0.0;
  double jitter_sigma = 0.0;  // px
  double ghost_rate = 0.0;    // expected ghosts per frame and view
};

/// Per-detection dropout, isotropic jitter, and uniformly placed ghosts.
/// Points stay inside the image of the matching camera.
DetectionSet degrade(const DetectionSet& in, const DegradeModel& model, const StereoRig& rig, int n_frames,
                     std::uint64_t seed);

}  // namespace ft3d
