// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ft3d/simd/kernels.hpp"

namespace ft3d::simd {

#ifndef FT3D_WITH_AVX2
// Non-x86 builds: the AVX2 entry points exist but are never selected.
namespace avx2 {
void absdiff(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n) {
  scalar::absdiff(a, b, out, n);
}
std::pair<std::uint8_t, std::uint8_t> minmax(const std::uint8_t* d, std::size_t n) { return scalar::minmax(d, n); }
void normalize(const std::uint8_t* in, std::uint8_t* out, std::size_t n, std::uint8_t lo, std::uint8_t hi) {
  scalar::normalize(in, out, n, lo, hi);
}
void median5x5(const std::uint8_t* in, std::uint8_t* out, int w, int h) { scalar::median5x5(in, out, w, h); }
void ring_response(const std::uint8_t* in, std::uint8_t* out, int w, int h) { scalar::ring_response(in, out, w, h); }
void squared_distances(const double* ax, const double* ay, const double* az, std::size_t n, const double* bx,
                       const double* by, const double* bz, std::size_t m, double* out) {
  scalar::squared_distances(ax, ay, az, n, bx, by, bz, m, out);
}
}  // namespace avx2
#endif

namespace {

constexpr int kUnset = -1;
std::atomic<int> g_backend{kUnset};

Backend detect_default() {
  if (const char* env = std::getenv("FT3D_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && avx2_available()) return Backend::Avx2;
  }
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(FT3D_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() {
  int b = g_backend.load(std::memory_order_acquire);
  if (b == kUnset) {
    b = static_cast<int>(detect_default());
    g_backend.store(b, std::memory_order_release);
  }
  return static_cast<Backend>(b);
}

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available()) throw std::runtime_error("AVX2 backend requested but unavailable");
  g_backend.store(static_cast<int>(b), std::memory_order_release);
}

void absdiff(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::span<std::uint8_t> out) {
  require(a.size() == b.size() && a.size() == out.size(), "absdiff: size mismatch");
  if (active_backend() == Backend::Avx2) return avx2::absdiff(a.data(), b.data(), out.data(), a.size());
  scalar::absdiff(a.data(), b.data(), out.data(), a.size());
}

std::pair<std::uint8_t, std::uint8_t> minmax(std::span<const std::uint8_t> data) {
  if (active_backend() == Backend::Avx2) return avx2::minmax(data.data(), data.size());
  return scalar::minmax(data.data(), data.size());
}

void normalize(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, std::uint8_t lo, std::uint8_t hi) {
  require(in.size() == out.size(), "normalize: size mismatch");
  require(hi > lo, "normalize: empty range");
  if (active_backend() == Backend::Avx2) return avx2::normalize(in.data(), out.data(), in.size(), lo, hi);
  scalar::normalize(in.data(), out.data(), in.size(), lo, hi);
}

void median5x5(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width, int height) {
  require(in.size() == out.size() && in.size() == static_cast<std::size_t>(width) * height, "median5x5: size mismatch");
  if (active_backend() == Backend::Avx2) return avx2::median5x5(in.data(), out.data(), width, height);
  scalar::median5x5(in.data(), out.data(), width, height);
}

void ring_response(std::span<const std::uint8_t> binary01, std::span<std::uint8_t> out, int width, int height) {
  require(binary01.size() == out.size() && out.size() == static_cast<std::size_t>(width) * height,
          "ring_response: size mismatch");
  if (active_backend() == Backend::Avx2) return avx2::ring_response(binary01.data(), out.data(), width, height);
  scalar::ring_response(binary01.data(), out.data(), width, height);
}

void squared_distances(std::span<const double> ax, std::span<const double> ay, std::span<const double> az,
                       std::span<const double> bx, std::span<const double> by, std::span<const double> bz,
                       std::span<double> out) {
  const std::size_t n = ax.size(), m = bx.size();
  require(ay.size() == n && az.size() == n && by.size() == m && bz.size() == m && out.size() == n * m,
          "squared_distances: size mismatch");
  if (active_backend() == Backend::Avx2)
    return avx2::squared_distances(ax.data(), ay.data(), az.data(), n, bx.data(), by.data(), bz.data(), m, out.data());
  scalar::squared_distances(ax.data(), ay.data(), az.data(), n, bx.data(), by.data(), bz.data(), m, out.data());
}

}  // namespace ft3d::simd
