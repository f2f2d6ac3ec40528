// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <doctest.h>

#include <random>
#include <vector>

#include "ft3d/simd/kernels.hpp"

using namespace ft3d;

namespace {

std::vector<std::uint8_t> random_bytes(std::size_t n, std::mt19937& rng, int hi = 255) {
  std::uniform_int_distribution<int> d(0, hi);
  std::vector<std::uint8_t> v(n);
  for (auto& x : v) x = static_cast<std::uint8_t>(d(rng));
  return v;
}

// Sizes straddle the 32-byte vector width and the 5x5 border.
const int kShapes[][2] = {{1, 1}, {3, 2}, {5, 5}, {31, 7}, {32, 9}, {33, 33}, {64, 17}, {97, 41}};

}  // namespace

TEST_CASE("backend selection") {
  const simd::Backend before = simd::active_backend();
  simd::set_backend(simd::Backend::Scalar);
  CHECK(simd::active_backend() == simd::Backend::Scalar);
  if (simd::avx2_available()) {
    simd::set_backend(simd::Backend::Avx2);
    CHECK(simd::active_backend() == simd::Backend::Avx2);
  } else {
    CHECK_THROWS(simd::set_backend(simd::Backend::Avx2));
  }
  simd::set_backend(before);
  CHECK(simd::to_string(simd::Backend::Scalar) == "scalar");
}

TEST_CASE("scalar kernels on hand values") {
  const std::uint8_t a[] = {0, 10, 200, 255};
  const std::uint8_t b[] = {5, 10, 100, 0};
  std::uint8_t out[4];
  simd::scalar::absdiff(a, b, out, 4);
  CHECK(out[0] == 5);
  CHECK(out[1] == 0);
  CHECK(out[2] == 100);
  CHECK(out[3] == 255);
  const auto [lo, hi] = simd::scalar::minmax(a, 4);
  CHECK(lo == 0);
  CHECK(hi == 255);
  const std::uint8_t in[] = {10, 20, 30};
  simd::scalar::normalize(in, out, 3, 10, 30);
  CHECK(out[0] == 0);
  CHECK(out[1] == 128);
  CHECK(out[2] == 255);
  const double ax[] = {0}, ay[] = {0}, az[] = {0}, bx[] = {3, 1}, by[] = {4, 1}, bz[] = {0, 1};
  double d[2];
  simd::scalar::squared_distances(ax, ay, az, 1, bx, by, bz, 2, d);
  CHECK(d[0] == 25.0);
  CHECK(d[1] == 3.0);
}

TEST_CASE("AVX2 kernels match the scalar reference bit for bit") {
  if (!simd::avx2_available()) {
    MESSAGE("AVX2 unavailable, skipping");
    return;
  }
  std::mt19937 rng(42);
  for (const auto& shape : kShapes) {
    const int w = shape[0], h = shape[1];
    const std::size_t n = static_cast<std::size_t>(w) * h;
    CAPTURE(w);
    CAPTURE(h);
    for (int rep = 0; rep < 5; ++rep) {
      const auto a = random_bytes(n, rng), b = random_bytes(n, rng);
      std::vector<std::uint8_t> s(n), v(n);

      simd::scalar::absdiff(a.data(), b.data(), s.data(), n);
      simd::avx2::absdiff(a.data(), b.data(), v.data(), n);
      CHECK(s == v);

      CHECK(simd::scalar::minmax(a.data(), n) == simd::avx2::minmax(a.data(), n));

      auto [lo, hi] = simd::scalar::minmax(a.data(), n);
      if (hi > lo) {
        simd::scalar::normalize(a.data(), s.data(), n, lo, hi);
        simd::avx2::normalize(a.data(), v.data(), n, lo, hi);
        CHECK(s == v);
      }

      simd::scalar::median5x5(a.data(), s.data(), w, h);
      simd::avx2::median5x5(a.data(), v.data(), w, h);
      CHECK(s == v);

      const auto bin = random_bytes(n, rng, 1);
      simd::scalar::ring_response(bin.data(), s.data(), w, h);
      simd::avx2::ring_response(bin.data(), v.data(), w, h);
      CHECK(s == v);
    }
  }

  std::uniform_real_distribution<double> u(-50, 50);
  for (std::size_t n : {1u, 3u, 4u, 7u, 13u}) {
    for (std::size_t m : {1u, 2u, 5u, 8u, 11u}) {
      std::vector<double> ax(n), ay(n), az(n), bx(m), by(m), bz(m);
      for (auto* vec : {&ax, &ay, &az, &bx, &by, &bz})
        for (double& x : *vec) x = u(rng);
      std::vector<double> s(n * m), v(n * m);
      simd::scalar::squared_distances(ax.data(), ay.data(), az.data(), n, bx.data(), by.data(), bz.data(), m,
                                      s.data());
      simd::avx2::squared_distances(ax.data(), ay.data(), az.data(), n, bx.data(), by.data(), bz.data(), m,
                                    v.data());
      CHECK(s == v);
    }
  }
}

TEST_CASE("median of a single bright pixel is removed") {
  std::vector<std::uint8_t> img(49, 0), out(49, 7);
  img[24] = 255;
  simd::scalar::median5x5(img.data(), out.data(), 7, 7);
  for (auto x : out) CHECK(x == 0);
}
