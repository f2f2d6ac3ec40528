// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

// Compiled with -mavx2; only reached through the dispatcher after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <vector>

#include "ft3d/simd/kernels.hpp"

namespace ft3d::simd::avx2 {

void absdiff(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i d = _mm256_or_si256(_mm256_subs_epu8(va, vb), _mm256_subs_epu8(vb, va));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), d);
  }
  scalar::absdiff(a + i, b + i, out + i, n - i);
}

std::pair<std::uint8_t, std::uint8_t> minmax(const std::uint8_t* data, std::size_t n) {
  __m256i lo = _mm256_set1_epi8(static_cast<char>(0xFF));
  __m256i hi = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    lo = _mm256_min_epu8(lo, v);
    hi = _mm256_max_epu8(hi, v);
  }
  alignas(32) std::array<std::uint8_t, 32> lo_lanes{}, hi_lanes{};
  _mm256_store_si256(reinterpret_cast<__m256i*>(lo_lanes.data()), lo);
  _mm256_store_si256(reinterpret_cast<__m256i*>(hi_lanes.data()), hi);
  auto [tail_lo, tail_hi] = scalar::minmax(data + i, n - i);
  for (int k = 0; k < 32; ++k) {
    tail_lo = std::min(tail_lo, lo_lanes[k]);
    tail_hi = std::max(tail_hi, hi_lanes[k]);
  }
  return {tail_lo, tail_hi};
}

namespace {

inline __m256i normalize8(const std::uint8_t* in, __m256i vlo, __m256 scale, __m256 half) {
  const __m256i px = _mm256_cvtepu8_epi32(_mm_loadl_epi64(reinterpret_cast<const __m128i*>(in)));
  const __m256 d = _mm256_cvtepi32_ps(_mm256_sub_epi32(px, vlo));
  return _mm256_cvttps_epi32(_mm256_add_ps(_mm256_mul_ps(d, scale), half));
}

}  // namespace

void normalize(const std::uint8_t* in, std::uint8_t* out, std::size_t n, std::uint8_t lo, std::uint8_t hi) {
  const __m256 scale = _mm256_set1_ps(255.0f / static_cast<float>(hi - lo));
  const __m256 half = _mm256_set1_ps(0.5f);
  const __m256i vlo = _mm256_set1_epi32(lo);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const __m256i a = normalize8(in + i, vlo, scale, half);
    const __m256i b = normalize8(in + i + 8, vlo, scale, half);
    const __m256i words = _mm256_permute4x64_epi64(_mm256_packs_epi32(a, b), 0xD8);
    const __m128i bytes = _mm_packus_epi16(_mm256_castsi256_si128(words), _mm256_extracti128_si256(words, 1));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out + i), bytes);
  }
  scalar::normalize(in + i, out + i, n - i, lo, hi);
}

void median5x5(const std::uint8_t* in, std::uint8_t* out, int width, int height) {
  if (width <= 0 || height <= 0) return;
  const int pw = width + 4;
  const int ph = height + 4;
  std::vector<std::uint8_t> pad(static_cast<std::size_t>(pw) * ph);
  for (int y = 0; y < ph; ++y) {
    const int sy = std::clamp(y - 2, 0, height - 1);
    for (int x = 0; x < pw; ++x) {
      const int sx = std::clamp(x - 2, 0, width - 1);
      pad[static_cast<std::size_t>(y) * pw + x] = in[static_cast<std::size_t>(sy) * width + sx];
    }
  }

  __m256i v[25];
  std::array<std::uint8_t, 25> window{};
  for (int y = 0; y < height; ++y) {
    int x = 0;
    for (; x + 32 <= width; x += 32) {
      int k = 0;
      for (int dy = 0; dy < 5; ++dy) {
        const std::uint8_t* row = pad.data() + static_cast<std::size_t>(y + dy) * pw + x;
        for (int dx = 0; dx < 5; ++dx) v[k++] = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + dx));
      }
      // Odd-even transposition network: 25 rounds sort 25 lanes-wise values.
      for (int round = 0; round < 25; ++round) {
        for (int i = round & 1; i + 1 < 25; i += 2) {
          const __m256i a = v[i];
          v[i] = _mm256_min_epu8(a, v[i + 1]);
          v[i + 1] = _mm256_max_epu8(a, v[i + 1]);
        }
      }
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + static_cast<std::size_t>(y) * width + x), v[12]);
    }
    for (; x < width; ++x) {
      int k = 0;
      for (int dy = 0; dy < 5; ++dy)
        for (int dx = 0; dx < 5; ++dx) window[k++] = pad[static_cast<std::size_t>(y + dy) * pw + x + dx];
      std::nth_element(window.begin(), window.begin() + 12, window.end());
      out[static_cast<std::size_t>(y) * width + x] = window[12];
    }
  }
}

void ring_response(const std::uint8_t* in, std::uint8_t* out, int width, int height) {
  if (width <= 0 || height <= 0) return;
  const int pw = width + 4;
  const int ph = height + 4;
  std::vector<std::uint8_t> pad(static_cast<std::size_t>(pw) * ph, 0);
  for (int y = 0; y < height; ++y)
    std::copy_n(in + static_cast<std::size_t>(y) * width, width, pad.data() + static_cast<std::size_t>(y + 2) * pw + 2);

  const __m256i hundred = _mm256_set1_epi8(100);
  const __m256i zero = _mm256_setzero_si256();
  int x_vec_end = width - width % 32;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < x_vec_end; x += 32) {
      __m256i inner = zero, outer = zero, centre = zero;
      for (int dy = 0; dy < 5; ++dy) {
        const std::uint8_t* row = pad.data() + static_cast<std::size_t>(y + dy) * pw + x;
        for (int dx = 0; dx < 5; ++dx) {
          const __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + dx));
          if (dy == 2 && dx == 2) {
            centre = p;
          } else if (dy >= 1 && dy <= 3 && dx >= 1 && dx <= 3) {
            inner = _mm256_add_epi8(inner, p);
          } else {
            outer = _mm256_add_epi8(outer, p);
          }
        }
      }
      __m256i inner16 = _mm256_add_epi8(inner, inner);
      inner16 = _mm256_add_epi8(inner16, inner16);
      inner16 = _mm256_add_epi8(inner16, inner16);
      inner16 = _mm256_add_epi8(inner16, inner16);
      const __m256i inner15 = _mm256_sub_epi8(inner16, inner);
      const __m256i centre100 = _mm256_and_si256(_mm256_sub_epi8(zero, centre), hundred);
      const __m256i sum = _mm256_add_epi8(_mm256_add_epi8(centre100, inner15), outer);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + static_cast<std::size_t>(y) * width + x), sum);
    }
  }
  if (x_vec_end == width) return;
  // Remaining columns: reuse the scalar rule on the zero-padded buffer.
  static constexpr int kKernel[5][5] = {
      {1, 1, 1, 1, 1}, {1, 15, 15, 15, 1}, {1, 15, 100, 15, 1}, {1, 15, 15, 15, 1}, {1, 1, 1, 1, 1}};
  for (int y = 0; y < height; ++y) {
    for (int x = x_vec_end; x < width; ++x) {
      int sum = 0;
      for (int dy = 0; dy < 5; ++dy)
        for (int dx = 0; dx < 5; ++dx) sum += kKernel[dy][dx] * pad[static_cast<std::size_t>(y + dy) * pw + x + dx];
      out[static_cast<std::size_t>(y) * width + x] = static_cast<std::uint8_t>(sum);
    }
  }
}

void squared_distances(const double* ax, const double* ay, const double* az, std::size_t n, const double* bx,
                       const double* by, const double* bz, std::size_t m, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d x = _mm256_set1_pd(ax[i]);
    const __m256d y = _mm256_set1_pd(ay[i]);
    const __m256d z = _mm256_set1_pd(az[i]);
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) {
      const __m256d dx = _mm256_sub_pd(x, _mm256_loadu_pd(bx + j));
      const __m256d dy = _mm256_sub_pd(y, _mm256_loadu_pd(by + j));
      const __m256d dz = _mm256_sub_pd(z, _mm256_loadu_pd(bz + j));
      const __m256d s = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)), _mm256_mul_pd(dz, dz));
      _mm256_storeu_pd(out + i * m + j, s);
    }
    for (; j < m; ++j) {
      const double dx = ax[i] - bx[j];
      const double dy = ay[i] - by[j];
      const double dz = az[i] - bz[j];
      out[i * m + j] = dx * dx + dy * dy + dz * dz;
    }
  }
}

}  // namespace ft3d::simd::avx2
