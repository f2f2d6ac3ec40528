// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/detect.hpp"

#include <algorithm>
#include <deque>

#include "ft3d/io.hpp"
#include "ft3d/simd/kernels.hpp"

namespace ft3d {

void DetectParams::validate() const {
  if (n_bg <= 0) throw std::invalid_argument("detect.n_bg must be positive");
  if (downsample <= 0) throw std::invalid_argument("detect.downsample must be positive");
  if (!(nms_thresh > 0.0)) throw std::invalid_argument("detect.nms_thresh must be positive");
  if (!(junction_divisor > 0.0)) throw std::invalid_argument("detect.junction_divisor must be positive");
  if (!(min_keypoint_weight > 0.0)) throw std::invalid_argument("detect.min_keypoint_weight must be positive");
  if (min_blob_area <= 0) throw std::invalid_argument("detect.min_blob_area must be positive");
  if (n_fish <= 0) throw std::invalid_argument("n_fish must be positive");
  if (min_contrast < 0) throw std::invalid_argument("detect.min_contrast must be non-negative");
  if (intermodes_max_iterations <= 0) throw std::invalid_argument("detect.intermodes_max_iterations must be positive");
}

GrayImage estimate_background(std::span<const GrayImage> frames) {
  if (frames.empty()) throw std::invalid_argument("estimate_background: no frames");
  const GrayImage& first = frames.front();
  for (const GrayImage& f : frames)
    if (!f.same_shape(first)) throw std::invalid_argument("estimate_background: frame dimensions differ");

  GrayImage bg(first.width(), first.height());
  std::vector<std::uint8_t> samples(frames.size());
  const std::size_t mid = (frames.size() - 1) / 2;
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t k = 0; k < frames.size(); ++k) samples[k] = frames[k].pixels()[i];
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(mid), samples.end());
    bg.pixels()[i] = samples[mid];
  }
  return bg;
}

std::vector<int> uniform_sample_indices(int n_frames, int n_samples) {
  std::vector<int> out;
  if (n_frames <= 0 || n_samples <= 0) return out;
  const int n = std::min(n_frames, n_samples);
  for (int i = 0; i < n; ++i) out.push_back(static_cast<int>((static_cast<long long>(i) * n_frames) / n));
  return out;
}

GrayImage preprocess(const GrayImage& frame, const GrayImage& bg) {
  if (!frame.same_shape(bg)) throw std::invalid_argument("preprocess: frame and background dimensions differ");
  GrayImage diff(frame.width(), frame.height());
  simd::absdiff(frame.pixels(), bg.pixels(), diff.pixels());
  const auto [lo, hi] = simd::minmax(diff.pixels());
  if (hi == lo) return GrayImage(frame.width(), frame.height(), 0);
  GrayImage norm(frame.width(), frame.height());
  simd::normalize(diff.pixels(), norm.pixels(), lo, hi);
  GrayImage out(frame.width(), frame.height());
  simd::median5x5(norm.pixels(), out.pixels(), frame.width(), frame.height());
  return out;
}

std::vector<Blob> connected_components(const GrayImage& binary) {
  const int w = binary.width(), h = binary.height();
  std::vector<int> label(binary.size(), -1);
  std::vector<Blob> blobs;
  std::deque<std::array<int, 2>> queue;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t start = static_cast<std::size_t>(y) * w + x;
      if (!binary.at(x, y) || label[start] >= 0) continue;
      Blob blob;
      blob.min_x = blob.max_x = x;
      blob.min_y = blob.max_y = y;
      const int id = static_cast<int>(blobs.size());
      label[start] = id;
      queue.push_back({x, y});
      while (!queue.empty()) {
        const auto [px, py] = queue.front();
        queue.pop_front();
        blob.pixels.push_back({px, py});
        blob.min_x = std::min(blob.min_x, px);
        blob.max_x = std::max(blob.max_x, px);
        blob.min_y = std::min(blob.min_y, py);
        blob.max_y = std::max(blob.max_y, py);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = px + dx, ny = py + dy;
            if ((dx == 0 && dy == 0) || !binary.contains(nx, ny) || !binary.at(nx, ny)) continue;
            const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
            if (label[ni] >= 0) continue;
            label[ni] = id;
            queue.push_back({nx, ny});
          }
        }
      }
      std::sort(blob.pixels.begin(), blob.pixels.end(),
                [](const auto& a, const auto& b) { return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0]; });
      blobs.push_back(std::move(blob));
    }
  }
  return blobs;
}

Blob fill_holes(const Blob& blob) {
  // Local canvas with a one-pixel free border; background reachable from the
  // border through 4-connected steps is outside, everything else is inside.
  const int ox = blob.min_x - 1, oy = blob.min_y - 1;
  const int w = blob.max_x - blob.min_x + 3, h = blob.max_y - blob.min_y + 3;
  std::vector<std::uint8_t> state(static_cast<std::size_t>(w) * h, 0);  // 0 unknown, 1 blob, 2 outside
  for (const auto& p : blob.pixels) state[static_cast<std::size_t>(p[1] - oy) * w + (p[0] - ox)] = 1;
  std::deque<std::array<int, 2>> queue{{0, 0}};
  state[0] = 2;
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    static constexpr int kDx[4] = {1, -1, 0, 0};
    static constexpr int kDy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int nx = x + kDx[k], ny = y + kDy[k];
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      std::uint8_t& s = state[static_cast<std::size_t>(ny) * w + nx];
      if (s != 0) continue;
      s = 2;
      queue.push_back({nx, ny});
    }
  }
  Blob out = blob;
  out.pixels.clear();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (state[static_cast<std::size_t>(y) * w + x] != 2) out.pixels.push_back({x + ox, y + oy});
  return out;
}

namespace {

struct BlobMoments {
  double mx = 0.0, my = 0.0;
  Cov2 cov;
};

BlobMoments moments(const Blob& blob) {
  BlobMoments m;
  const double n = static_cast<double>(blob.area());
  for (const auto& p : blob.pixels) {
    m.mx += p[0];
    m.my += p[1];
  }
  m.mx /= n;
  m.my /= n;
  double xx = 0.0, xy = 0.0, yy = 0.0;
  for (const auto& p : blob.pixels) {
    const double dx = p[0] - m.mx, dy = p[1] - m.my;
    xx += dx * dx;
    xy += dx * dy;
    yy += dy * dy;
  }
  m.cov = {xx / n, xy / n, yy / n};
  return m;
}

Point2D scaled(double x, double y, int scale) { return {x * scale, y * scale}; }

// Foreground mask after background subtraction, or nothing when the frame
// carries no usable contrast against the background.
std::optional<GrayImage> foreground(const GrayImage& frame, const GrayImage& bg, const DetectParams& params) {
  if (!frame.same_shape(bg)) throw std::invalid_argument("detect: frame and background dimensions differ");
  const GrayImage f = decimate(frame, params.downsample);
  const GrayImage b = decimate(bg, params.downsample);
  GrayImage diff(f.width(), f.height());
  simd::absdiff(f.pixels(), b.pixels(), diff.pixels());
  if (simd::minmax(diff.pixels()).second < params.min_contrast) return std::nullopt;
  return preprocess(f, b);
}

GrayImage threshold_mask(const GrayImage& fg, std::uint8_t t) {
  GrayImage mask(fg.width(), fg.height());
  for (std::size_t i = 0; i < fg.size(); ++i) mask.pixels()[i] = fg.pixels()[i] > t ? 255 : 0;
  return mask;
}

}  // namespace

Detection front_detection_from_blob(const Blob& blob, int frame, int scale) {
  if (blob.pixels.empty()) throw std::invalid_argument("front_detection_from_blob: empty blob");
  const BlobMoments m = moments(blob);
  Detection d;
  d.frame = frame;
  d.view = View::Front;
  d.centroid = scaled(m.mx, m.my, scale);
  d.head = d.centroid;
  const int bw = blob.max_x - blob.min_x + 1;
  const int bh = blob.max_y - blob.min_y + 1;
  Point2D p1, p2;
  if (bw > bh) {
    p1 = scaled(blob.min_x, m.my, scale);
    p2 = scaled(blob.max_x, m.my, scale);
  } else {
    p1 = scaled(m.mx, blob.min_y, scale);
    p2 = scaled(m.mx, blob.max_y, scale);
  }
  d.candidates = {d.centroid, p1, p2};
  const double s2 = static_cast<double>(scale) * scale;
  d.cov = Cov2{m.cov.xx * s2, m.cov.xy * s2, m.cov.yy * s2};
  d.bbox = BBox{static_cast<double>(blob.min_x) * scale, static_cast<double>(blob.min_y) * scale,
                static_cast<double>(bw) * scale, static_cast<double>(bh) * scale};
  return d;
}

std::vector<Detection> detect_top(const GrayImage& frame, const GrayImage& bg, const DetectParams& params,
                                  int frame_index) {
  params.validate();
  const auto fg = foreground(frame, bg, params);
  if (!fg) return {};
  std::uint8_t t = 0;
  try {
    t = intermodes_threshold(histogram(*fg), params.intermodes_max_iterations);
  } catch (const ThresholdError&) {
    return {};
  }
  const int k = params.downsample;
  std::vector<Detection> out;
  for (const Blob& raw : connected_components(threshold_mask(*fg, t))) {
    if (raw.area() < params.min_blob_area) continue;
    const Blob blob = fill_holes(raw);
    // Work on a crop with room for the 20x20 weighting window.
    constexpr int kMargin = 11;
    const int ox = blob.min_x - kMargin, oy = blob.min_y - kMargin;
    GrayImage mask(blob.max_x - blob.min_x + 1 + 2 * kMargin, blob.max_y - blob.min_y + 1 + 2 * kMargin);
    for (const auto& p : blob.pixels) mask.at(p[0] - ox, p[1] - oy) = 255;
    const GrayImage skel = skeletonize(mask);
    const auto keypoints = select_head_keypoints(skeleton_keypoints(skel, mask, params));
    if (keypoints.empty()) continue;

    const BlobMoments m = moments(blob);
    const double s2 = static_cast<double>(k) * k;
    for (const Keypoint& kp : keypoints) {
      Detection d;
      d.frame = frame_index;
      d.view = View::Top;
      d.head = scaled(kp.x + ox, kp.y + oy, k);
      d.candidates = {d.head};
      d.centroid = scaled(m.mx, m.my, k);
      d.cov = Cov2{m.cov.xx * s2, m.cov.xy * s2, m.cov.yy * s2};
      d.bbox = BBox{static_cast<double>(blob.min_x) * k, static_cast<double>(blob.min_y) * k,
                    static_cast<double>(blob.max_x - blob.min_x + 1) * k,
                    static_cast<double>(blob.max_y - blob.min_y + 1) * k};
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::vector<Detection> detect_front(const GrayImage& frame, const GrayImage& bg, const DetectParams& params,
                                    int frame_index) {
  params.validate();
  const auto fg = foreground(frame, bg, params);
  if (!fg) return {};
  std::uint8_t t = 0;
  try {
    t = entropy_threshold(histogram(*fg));
  } catch (const ThresholdError&) {
    return {};
  }
  auto blobs = connected_components(threshold_mask(*fg, t));
  std::erase_if(blobs, [&](const Blob& b) { return b.area() < params.min_blob_area; });
  std::stable_sort(blobs.begin(), blobs.end(), [](const Blob& a, const Blob& b) { return a.area() > b.area(); });
  if (blobs.size() > static_cast<std::size_t>(2 * params.n_fish)) blobs.resize(2 * params.n_fish);

  std::vector<Detection> out;
  out.reserve(blobs.size());
  for (const Blob& b : blobs) out.push_back(front_detection_from_blob(b, frame_index, params.downsample));
  return out;
}

DetectionSet ingest_external_detections(const std::filesystem::path& path, double min_confidence) {
  DetectionSet raw = read_detections_csv(path);
  DetectionSet out;
  for (View v : {View::Top, View::Front}) {
    for (auto& [frame, dets] : raw.of(v)) {
      for (Detection& d : dets) {
        if (d.confidence && *d.confidence < min_confidence) continue;
        if (d.bbox) d.head = {d.bbox->x + d.bbox->w / 2.0, d.bbox->y + d.bbox->h / 2.0};
        d.candidates = {d.head};
        d.centroid = d.head;
        out.of(v)[frame].push_back(d);
      }
    }
  }
  return out;
}

}  // namespace ft3d
