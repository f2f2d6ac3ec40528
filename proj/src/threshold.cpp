// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "ft3d/detect.hpp"

namespace ft3d {

namespace {

// Centre bins of the strict local maxima; a plateau counts as one mode.
std::vector<int> find_modes(const Histogram& h) {
  constexpr double kOutside = -std::numeric_limits<double>::infinity();
  std::vector<int> modes;
  int i = 0;
  while (i < 256) {
    int j = i;
    while (j + 1 < 256 && h[j + 1] == h[i]) ++j;
    const double left = i > 0 ? h[i - 1] : kOutside;
    const double right = j < 255 ? h[j + 1] : kOutside;
    if (h[i] > left && h[i] > right) modes.push_back((i + j) / 2);
    i = j + 1;
  }
  return modes;
}

void smooth3(Histogram& h) {
  Histogram out{};
  for (int i = 0; i < 256; ++i) {
    const double l = i > 0 ? h[i - 1] : 0.0;
    const double r = i < 255 ? h[i + 1] : 0.0;
    out[i] = (l + h[i] + r) / 3.0;
  }
  h = out;
}

}  // namespace

Histogram histogram(const GrayImage& img) {
  Histogram h{};
  for (std::uint8_t p : img.pixels()) h[p] += 1.0;
  return h;
}

std::uint8_t intermodes_threshold(const Histogram& hist, int max_iterations) {
  const double total = std::accumulate(hist.begin(), hist.end(), 0.0);
  if (!(total > 0.0)) throw ThresholdError("intermodes: empty histogram");
  Histogram h = hist;
  for (int iter = 0;; ++iter) {
    const auto modes = find_modes(h);
    if (modes.size() == 2) return static_cast<std::uint8_t>((modes[0] + modes[1]) / 2);
    if (iter >= max_iterations) break;
    smooth3(h);
  }
  throw ThresholdError("intermodes: histogram not bimodal after " + std::to_string(max_iterations) + " smoothing passes");
}

std::uint8_t entropy_threshold(const Histogram& hist) {
  const double total = std::accumulate(hist.begin(), hist.end(), 0.0);
  int populated = 0;
  for (double v : hist) populated += v > 0.0 ? 1 : 0;
  if (populated < 2) throw ThresholdError("entropy: need at least two populated histogram bins");

  Histogram p{};
  for (int i = 0; i < 256; ++i) p[i] = hist[i] / total;
  // Cumulative mass below and above each bin, summed separately so that an
  // exhausted tail is exactly zero.
  Histogram below{}, above{};
  double acc = 0.0;
  for (int i = 0; i < 256; ++i) below[i] = (acc += p[i]);
  acc = 0.0;
  for (int i = 255; i >= 0; --i) {
    above[i] = acc;
    acc += p[i];
  }

  int best = -1;
  double best_e = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 256; ++k) {
    if (!(below[k] > 0.0) || !(above[k] > 0.0)) continue;
    double b = 0.0;
    for (int i = 0; i <= k; ++i) {
      if (p[i] <= 0.0) continue;
      const double q = p[i] / below[k];
      b -= q * std::log(q);
    }
    double w = 0.0;
    for (int i = k + 1; i < 256; ++i) {
      if (p[i] <= 0.0) continue;
      const double q = p[i] / above[k];
      w -= q * std::log(q);
    }
    const double e = std::abs(b) + std::abs(w);
    if (e > best_e) {
      best_e = e;
      best = k;
    }
  }
  if (best < 0) throw ThresholdError("entropy: no admissible threshold");
  return static_cast<std::uint8_t>(best);
}

}  // namespace ft3d
