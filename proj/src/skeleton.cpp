// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ft3d/detect.hpp"
#include "ft3d/simd/kernels.hpp"

namespace ft3d {

GrayImage skeletonize(const GrayImage& binary) {
  const int w = binary.width();
  const int h = binary.height();
  // One pixel of zero padding so every pixel has eight neighbours.
  const int pw = w + 2;
  std::vector<std::uint8_t> img(static_cast<std::size_t>(pw) * (h + 2), 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img[static_cast<std::size_t>(y + 1) * pw + x + 1] = binary.at(x, y) ? 1 : 0;

  std::vector<std::size_t> to_clear;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      to_clear.clear();
      for (int y = 1; y <= h; ++y) {
        for (int x = 1; x <= w; ++x) {
          const std::size_t c = static_cast<std::size_t>(y) * pw + x;
          if (!img[c]) continue;
          // P2..P9 clockwise from north.
          const std::uint8_t n[8] = {img[c - pw], img[c - pw + 1], img[c + 1], img[c + pw + 1],
                                     img[c + pw], img[c + pw - 1], img[c - 1], img[c - pw - 1]};
          const int b = n[0] + n[1] + n[2] + n[3] + n[4] + n[5] + n[6] + n[7];
          if (b < 2 || b > 6) continue;
          int a = 0;
          for (int k = 0; k < 8; ++k) a += (n[k] == 0 && n[(k + 1) % 8] == 1) ? 1 : 0;
          if (a != 1) continue;
          const bool ok = pass == 0 ? (n[0] * n[2] * n[4] == 0 && n[2] * n[4] * n[6] == 0)
                                    : (n[0] * n[2] * n[6] == 0 && n[0] * n[4] * n[6] == 0);
          if (ok) to_clear.push_back(c);
        }
      }
      for (std::size_t c : to_clear) img[c] = 0;
      changed = changed || !to_clear.empty();
    }
  }

  GrayImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out.at(x, y) = img[static_cast<std::size_t>(y + 1) * pw + x + 1] ? 255 : 0;
  return out;
}

std::optional<KeypointKind> classify_response(int response) {
  switch (response) {
    case 116:
    case 117:
    case 118:
    case 131:
      return KeypointKind::Endpoint;
    case 148:
    case 149:
    case 150:
    case 151:
      return KeypointKind::Junction;
    default:
      return std::nullopt;
  }
}

namespace {

double box_overlap(const Keypoint& a, const Keypoint& b) {
  const double ha = a.weight / 2.0, hb = b.weight / 2.0;
  const double iw = std::min(a.x + ha, b.x + hb) - std::max(a.x - ha, b.x - hb);
  const double ih = std::min(a.y + ha, b.y + hb) - std::max(a.y - ha, b.y - hb);
  return (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
}

// Smallest eigenvalue of the covariance of blob pixels inside the 20x20
// window centred on (cx, cy).
double window_weight(const GrayImage& blob, int cx, int cy) {
  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int y = std::max(0, cy - 10); y <= std::min(blob.height() - 1, cy + 9); ++y) {
    for (int x = std::max(0, cx - 10); x <= std::min(blob.width() - 1, cx + 9); ++x) {
      if (!blob.at(x, y)) continue;
      n += 1.0;
      sx += x;
      sy += y;
      sxx += static_cast<double>(x) * x;
      syy += static_cast<double>(y) * y;
      sxy += static_cast<double>(x) * y;
    }
  }
  if (n < 2.0) return 0.0;
  const double mx = sx / n, my = sy / n;
  const Cov2 c{sxx / n - mx * mx, sxy / n - mx * my, syy / n - my * my};
  return std::max(0.0, min_eigenvalue(c));
}

}  // namespace

std::vector<Keypoint> suppress_keypoints(std::vector<Keypoint> keypoints, double nms_thresh_percent) {
  std::stable_sort(keypoints.begin(), keypoints.end(),
                   [](const Keypoint& a, const Keypoint& b) { return a.weight > b.weight; });
  std::vector<Keypoint> kept;
  const double frac = nms_thresh_percent / 100.0;
  for (const Keypoint& k : keypoints) {
    const double own_area = k.weight * k.weight;
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const Keypoint& other) {
      const double ov = box_overlap(k, other);
      return ov > 0.0 && ov > frac * own_area;
    });
    if (!suppressed) kept.push_back(k);
  }
  return kept;
}

std::vector<Keypoint> skeleton_keypoints(const GrayImage& skel, const GrayImage& blob, const DetectParams& params) {
  if (!skel.same_shape(blob)) throw std::invalid_argument("skeleton_keypoints: skeleton and blob shapes differ");
  const int w = skel.width(), h = skel.height();
  std::vector<std::uint8_t> bin(skel.size());
  std::transform(skel.pixels().begin(), skel.pixels().end(), bin.begin(), [](std::uint8_t v) { return v ? 1 : 0; });
  std::vector<std::uint8_t> response(skel.size());
  simd::ring_response(bin, response, w, h);

  std::vector<Keypoint> found;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (!bin[i]) continue;
      const auto kind = classify_response(response[i]);
      if (!kind) continue;
      double weight = window_weight(blob, x, y);
      if (*kind == KeypointKind::Junction) weight /= params.junction_divisor;
      found.push_back({x, y, weight, *kind});
    }
  }
  auto kept = suppress_keypoints(std::move(found), params.nms_thresh);
  std::erase_if(kept, [&](const Keypoint& k) { return k.weight < params.min_keypoint_weight; });
  return kept;
}

std::vector<Keypoint> select_head_keypoints(const std::vector<Keypoint>& keypoints) {
  if (keypoints.size() <= 1) return keypoints;
  std::size_t a = 0, b = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < keypoints.size(); ++i) {
    for (std::size_t j = i + 1; j < keypoints.size(); ++j) {
      const double dx = keypoints[i].x - keypoints[j].x;
      const double dy = keypoints[i].y - keypoints[j].y;
      const double d = dx * dx + dy * dy;
      if (d > best) {
        best = d;
        a = i;
        b = j;
      }
    }
  }
  std::vector<Keypoint> out;
  out.push_back(keypoints[b].weight > keypoints[a].weight ? keypoints[b] : keypoints[a]);

  std::vector<Keypoint> extras;
  for (std::size_t i = 0; i < keypoints.size(); ++i)
    if (i != a && i != b) extras.push_back(keypoints[i]);
  std::stable_sort(extras.begin(), extras.end(), [](const Keypoint& l, const Keypoint& r) { return l.weight > r.weight; });
  extras.resize(extras.size() / 2);
  out.insert(out.end(), extras.begin(), extras.end());
  return out;
}

}  // namespace ft3d
