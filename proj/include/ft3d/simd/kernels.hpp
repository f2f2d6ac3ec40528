// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

// Data-parallel inner loops of the detector and the matchers. Each kernel
// has a scalar reference implementation and, on x86-64, an AVX2 variant.
// The variant is picked once at runtime; both must produce bit-identical
// output (see tests/test_simd_equivalence.cpp).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace ft3d::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend b);

/// True when the CPU and the build both support AVX2.
bool avx2_available();

/// Backend currently used by the dispatching entry points. Defaults to the
/// best available one; the FT3D_SIMD environment variable ("scalar" or
/// "avx2") overrides the choice at first use.
Backend active_backend();

/// Forces a backend (tests and benchmarks). Throws if AVX2 is requested but
/// unavailable.
void set_backend(Backend b);

// Dispatching entry points.
void absdiff(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::span<std::uint8_t> out);
std::pair<std::uint8_t, std::uint8_t> minmax(std::span<const std::uint8_t> data);
/// out = trunc(float(in - lo) * (255 / (hi - lo)) + 0.5); hi > lo required.
void normalize(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, std::uint8_t lo, std::uint8_t hi);
/// 5x5 median with clamp-to-border.
void median5x5(std::span<const std::uint8_t> in, std::span<std::uint8_t> out, int width, int height);
/// Skeleton neighbourhood code of a 0/1 image: 100*centre + 15*(8-ring sum)
/// + 1*(16-ring sum), zero outside the image. Max value 236 fits in a byte.
void ring_response(std::span<const std::uint8_t> binary01, std::span<std::uint8_t> out, int width, int height);
/// out[i*m + j] = |a_i - b_j|^2 over 3-vectors given as SoA arrays.
void squared_distances(std::span<const double> ax, std::span<const double> ay, std::span<const double> az,
                       std::span<const double> bx, std::span<const double> by, std::span<const double> bz,
                       std::span<double> out);

namespace scalar {
void absdiff(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
std::pair<std::uint8_t, std::uint8_t> minmax(const std::uint8_t* data, std::size_t n);
void normalize(const std::uint8_t* in, std::uint8_t* out, std::size_t n, std::uint8_t lo, std::uint8_t hi);
void median5x5(const std::uint8_t* in, std::uint8_t* out, int width, int height);
void ring_response(const std::uint8_t* in, std::uint8_t* out, int width, int height);
void squared_distances(const double* ax, const double* ay, const double* az, std::size_t n, const double* bx,
                       const double* by, const double* bz, std::size_t m, double* out);
}  // namespace scalar

namespace avx2 {
void absdiff(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out, std::size_t n);
std::pair<std::uint8_t, std::uint8_t> minmax(const std::uint8_t* data, std::size_t n);
void normalize(const std::uint8_t* in, std::uint8_t* out, std::size_t n, std::uint8_t lo, std::uint8_t hi);
void median5x5(const std::uint8_t* in, std::uint8_t* out, int width, int height);
void ring_response(const std::uint8_t* in, std::uint8_t* out, int width, int height);
void squared_distances(const double* ax, const double* ay, const double* az, std::size_t n, const double* bx,
                       const double* by, const double* bz, std::size_t m, double* out);
}  // namespace avx2

}  // namespace ft3d::simd
