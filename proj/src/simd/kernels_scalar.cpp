// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <algorithm>
#include <array>

#include "ft3d/simd/kernels.hpp"

namespace ft3d::simd::scalar {

void absdiff(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(a[i] > b[i] ? a[i] - b[i] : b[i] - a[i]);
}

std::pair<std::uint8_t, std::uint8_t> minmax(const std::uint8_t* data, std::size_t n) {
  std::uint8_t lo = 255, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    lo = std::min(lo, data[i]);
    hi = std::max(hi, data[i]);
  }
  return {lo, hi};
}

void normalize(const std::uint8_t* in, std::uint8_t* out, std::size_t n, std::uint8_t lo, std::uint8_t hi) {
  const float scale = 255.0f / static_cast<float>(hi - lo);
  for (std::size_t i = 0; i < n; ++i) {
    const float d = static_cast<float>(static_cast<int>(in[i]) - lo);
    const float v = d * scale + 0.5f;
    out[i] = static_cast<std::uint8_t>(std::clamp(static_cast<int>(v), 0, 255));
  }
}

void median5x5(const std::uint8_t* in, std::uint8_t* out, int width, int height) {
  std::array<std::uint8_t, 25> window{};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      int k = 0;
      for (int dy = -2; dy <= 2; ++dy) {
        const int yy = std::clamp(y + dy, 0, height - 1);
        for (int dx = -2; dx <= 2; ++dx) {
          const int xx = std::clamp(x + dx, 0, width - 1);
          window[k++] = in[static_cast<std::size_t>(yy) * width + xx];
        }
      }
      std::nth_element(window.begin(), window.begin() + 12, window.end());
      out[static_cast<std::size_t>(y) * width + x] = window[12];
    }
  }
}

void ring_response(const std::uint8_t* in, std::uint8_t* out, int width, int height) {
  static constexpr int kKernel[5][5] = {
      {1, 1, 1, 1, 1}, {1, 15, 15, 15, 1}, {1, 15, 100, 15, 1}, {1, 15, 15, 15, 1}, {1, 1, 1, 1, 1}};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      int sum = 0;
      for (int dy = -2; dy <= 2; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= height) continue;
        for (int dx = -2; dx <= 2; ++dx) {
          const int xx = x + dx;
          if (xx < 0 || xx >= width) continue;
          sum += kKernel[dy + 2][dx + 2] * in[static_cast<std::size_t>(yy) * width + xx];
        }
      }
      out[static_cast<std::size_t>(y) * width + x] = static_cast<std::uint8_t>(sum);
    }
  }
}

void squared_distances(const double* ax, const double* ay, const double* az, std::size_t n, const double* bx,
                       const double* by, const double* bz, std::size_t m, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double dx = ax[i] - bx[j];
      const double dy = ay[i] - by[j];
      const double dz = az[i] - bz[j];
      out[i * m + j] = dx * dx + dy * dy + dz * dz;
    }
  }
}

}  // namespace ft3d::simd::scalar
