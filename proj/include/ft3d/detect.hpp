// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ft3d/detection.hpp"
#include "ft3d/image.hpp"

namespace ft3d {

class ThresholdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DetectParams {
  int n_bg = 80;                     // background sample count
  int downsample = 2;                // pixel decimation factor
  double nms_thresh = 50.0;          // % of the keypoint's own box area
  double junction_divisor = 2.5;
  double min_keypoint_weight = 1.0;
  int min_blob_area = 20;            // px at the decimated resolution
  int n_fish = 1;
  int min_contrast = 10;             // peak |frame - bg| below this means no foreground
  int intermodes_max_iterations = 10000;

  void validate() const;
};

using Histogram = std::array<double, 256>;

Histogram histogram(const GrayImage& img);

/// Per-pixel lower median of equally sized frames.
GrayImage estimate_background(std::span<const GrayImage> frames);

/// n_samples frame indices spread uniformly over [0, n_frames).
std::vector<int> uniform_sample_indices(int n_frames, int n_samples);

/// |frame - bg|, min-max stretched to [0, 255] (constant images map to 0),
/// then 5x5 median filtered with clamped borders.
GrayImage preprocess(const GrayImage& frame, const GrayImage& bg);

/// Prewitt intermodes: smooth with a 3-tap mean until exactly two local
/// maxima remain (plateaus count once) and return the floor of their
/// midpoint. Throws ThresholdError after max_iterations smoothing passes.
std::uint8_t intermodes_threshold(const Histogram& hist, int max_iterations = 10000);

/// Maximum total (background + foreground) entropy threshold. Bins whose
/// cumulative mass is 0 or 1 are skipped; ties go to the smaller bin.
/// Throws ThresholdError if fewer than two bins are populated.
std::uint8_t entropy_threshold(const Histogram& hist);

/// Zhang-Suen thinning to convergence. Input: nonzero = foreground.
/// Output: 0/255.
GrayImage skeletonize(const GrayImage& binary);

enum class KeypointKind { Endpoint, Junction };

struct Keypoint {
  int x = 0;
  int y = 0;
  double weight = 0.0;
  KeypointKind kind = KeypointKind::Endpoint;
};

/// Neighbourhood code of the 5x5 skeleton kernel (see ring_response).
std::optional<KeypointKind> classify_response(int response);

/// Greedy non-maximum suppression over w x w boxes, larger weight wins.
std::vector<Keypoint> suppress_keypoints(std::vector<Keypoint> keypoints, double nms_thresh_percent);

/// Endpoints and junctions of a skeleton, weighted by the smallest
/// eigenvalue of the blob-pixel covariance in a 20x20 window, after NMS
/// and the minimum-weight cut. `blob` marks blob pixels (nonzero).
std::vector<Keypoint> skeleton_keypoints(const GrayImage& skel, const GrayImage& blob, const DetectParams& params);

/// Keeps the heavier of the two mutually farthest keypoints plus the
/// heavier half of the rest.
std::vector<Keypoint> select_head_keypoints(const std::vector<Keypoint>& keypoints);

struct Blob {
  std::vector<std::array<int, 2>> pixels;  // (x, y)
  int min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  int area() const { return static_cast<int>(pixels.size()); }
};

/// 8-connected components of nonzero pixels, in raster order of first pixel.
std::vector<Blob> connected_components(const GrayImage& binary);

/// Blob plus its enclosed holes.
Blob fill_holes(const Blob& blob);

/// Front-view detection for one blob at decimated resolution; coordinates
/// are multiplied by `scale` on the way out.
Detection front_detection_from_blob(const Blob& blob, int frame, int scale);

std::vector<Detection> detect_top(const GrayImage& frame, const GrayImage& bg, const DetectParams& params,
                                  int frame_index = 0);
std::vector<Detection> detect_front(const GrayImage& frame, const GrayImage& bg, const DetectParams& params,
                                    int frame_index = 0);

/// Reads a head-detection CSV (see io.hpp), keeps rows with
/// confidence >= min_confidence (rows without a confidence are kept) and
/// sets head = bbox centre when a box is present.
DetectionSet ingest_external_detections(const std::filesystem::path& path, double min_confidence);

}  // namespace ft3d
