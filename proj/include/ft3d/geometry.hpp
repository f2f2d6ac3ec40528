// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "ft3d/types.hpp"

namespace ft3d {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Intrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
};

struct Ray {
  Eigen::Vector3d origin;
  Eigen::Vector3d direction;  // unit length
};

/// Ideal pinhole camera. World-to-camera is x_cam = R * x_world + t, the
/// camera looks along +z_cam, image u grows with x_cam and v with y_cam.
/// No distortion and no refraction at the water surface.
class CameraModel {
 public:
  CameraModel() = default;
  CameraModel(View view, Intrinsics k, const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation,
              int width, int height);

  View view() const { return view_; }
  const Intrinsics& intrinsics() const { return k_; }
  const Eigen::Matrix3d& rotation() const { return r_; }
  const Eigen::Vector3d& translation() const { return t_; }
  int width() const { return width_; }
  int height() const { return height_; }

  /// Optical centre in world coordinates.
  Eigen::Vector3d center() const { return -r_.transpose() * t_; }

  /// Throws GeometryError if p is on or behind the image plane.
  Point2D project(const Point3D& p) const;

  Ray back_project(const Point2D& px) const;

  bool in_image(const Point2D& px) const {
    return px.u >= 0.0 && px.v >= 0.0 && px.u <= width_ - 1 && px.v <= height_ - 1;
  }

  /// Throws GeometryError when an invariant does not hold.
  void validate() const;

 private:
  View view_ = View::Top;
  Intrinsics k_{};
  Eigen::Matrix3d r_ = Eigen::Matrix3d::Identity();
  Eigen::Vector3d t_ = Eigen::Vector3d::Zero();
  int width_ = 1;
  int height_ = 1;
};

/// Closed axis-aligned box; boundary points count as inside.
struct TankBounds {
  double x_min = 0.0, x_max = 30.0;
  double y_min = 0.0, y_max = 30.0;
  double z_min = 0.0, z_max = 15.0;

  void validate() const;
  Point3D center() const { return {(x_min + x_max) / 2, (y_min + y_max) / 2, (z_min + z_max) / 2}; }
};

bool in_tank(const Point3D& p, const TankBounds& tank);

struct Triangulation {
  Point3D point;
  double reprojection_error = 0.0;  // mean over both views, px
};

/// Midpoint of closest approach between the two back-projected rays.
/// Throws GeometryError when the rays are (near) parallel.
Triangulation triangulate(const Point2D& p_top, const Point2D& p_front, const CameraModel& cam_top,
                          const CameraModel& cam_front);

struct StereoRig {
  CameraModel top;
  CameraModel front;
};

/// Top camera above the tank looking down, front camera in front of the
/// y = y_min wall looking along +y. Both see the whole tank.
StereoRig make_default_rig(const TankBounds& tank = {});

}  // namespace ft3d
