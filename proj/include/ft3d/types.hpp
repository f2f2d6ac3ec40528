// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ft3d {

enum class View { Top, Front };

inline std::string_view to_string(View v) { return v == View::Top ? "top" : "front"; }

inline View parse_view(std::string_view s) {
  if (s == "top") return View::Top;
  if (s == "front") return View::Front;
  throw std::invalid_argument("unknown view '" + std::string(s) + "' (expected top|front)");
}

/// Image-plane point in pixels.
struct Point2D {
  double u = 0.0;
  double v = 0.0;
  friend bool operator==(const Point2D&, const Point2D&) = default;
};

/// World point in centimetres (tank frame, one corner at the origin, z up).
struct Point3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const Point3D&, const Point3D&) = default;
};

inline double distance(const Point2D& a, const Point2D& b) { return std::hypot(a.u - b.u, a.v - b.v); }

inline double distance(const Point3D& a, const Point3D& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline bool is_finite(const Point2D& p) { return std::isfinite(p.u) && std::isfinite(p.v); }
inline bool is_finite(const Point3D& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

/// Axis-aligned box in pixels, (x, y) top-left.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  double area() const { return w * h; }
  friend bool operator==(const BBox&, const BBox&) = default;
};

inline double intersection_area(const BBox& a, const BBox& b) {
  const double iw = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double ih = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  return (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
}

/// Symmetric 2x2 covariance in px^2.
struct Cov2 {
  double xx = 1.0;
  double xy = 0.0;
  double yy = 1.0;
  friend bool operator==(const Cov2&, const Cov2&) = default;
};

/// Smallest eigenvalue of a symmetric 2x2 matrix.
inline double min_eigenvalue(const Cov2& c) {
  const double mean = 0.5 * (c.xx + c.yy);
  const double diff = 0.5 * (c.xx - c.yy);
  return mean - std::sqrt(diff * diff + c.xy * c.xy);
}

}  // namespace ft3d
