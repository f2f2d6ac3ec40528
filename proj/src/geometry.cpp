// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/geometry.hpp"

#include <cmath>
#include <string>

namespace ft3d {

CameraModel::CameraModel(View view, Intrinsics k, const Eigen::Matrix3d& rotation,
                         const Eigen::Vector3d& translation, int width, int height)
    : view_(view), k_(k), r_(rotation), t_(translation), width_(width), height_(height) {
  validate();
}

void CameraModel::validate() const {
  if (!(k_.fx > 0.0) || !(k_.fy > 0.0)) throw GeometryError("camera focal lengths must be positive");
  if (width_ <= 0 || height_ <= 0) throw GeometryError("camera image size must be positive");
  if (!r_.allFinite() || !t_.allFinite()) throw GeometryError("camera extrinsics must be finite");
  const double err = (r_.transpose() * r_ - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (err > 1e-9) throw GeometryError("camera rotation is not orthonormal (|R^T R - I| = " + std::to_string(err) + ")");
  if (r_.determinant() < 0.0) throw GeometryError("camera rotation has negative determinant");
}

Point2D CameraModel::project(const Point3D& p) const {
  if (!is_finite(p)) throw GeometryError("cannot project a non-finite point");
  const Eigen::Vector3d c = r_ * Eigen::Vector3d(p.x, p.y, p.z) + t_;
  if (c.z() <= 0.0) throw GeometryError("point is behind the camera");
  return {k_.fx * c.x() / c.z() + k_.cx, k_.fy * c.y() / c.z() + k_.cy};
}

Ray CameraModel::back_project(const Point2D& px) const {
  const Eigen::Vector3d d_cam((px.u - k_.cx) / k_.fx, (px.v - k_.cy) / k_.fy, 1.0);
  return {center(), (r_.transpose() * d_cam).normalized()};
}

void TankBounds::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max) || !(z_min < z_max)) throw GeometryError("tank bounds must satisfy min < max");
}

bool in_tank(const Point3D& p, const TankBounds& tank) {
  return p.x >= tank.x_min && p.x <= tank.x_max && p.y >= tank.y_min && p.y <= tank.y_max && p.z >= tank.z_min &&
         p.z <= tank.z_max;
}

Triangulation triangulate(const Point2D& p_top, const Point2D& p_front, const CameraModel& cam_top,
                          const CameraModel& cam_front) {
  const Ray a = cam_top.back_project(p_top);
  const Ray b = cam_front.back_project(p_front);

  // Minimise |a.o + s a.d - (b.o + t b.d)|^2 over (s, t); directions are unit.
  const double ab = a.direction.dot(b.direction);
  const Eigen::Vector3d w = b.origin - a.origin;
  const double det = ab * ab - 1.0;
  if (std::abs(det) < 1e-12) throw GeometryError("rays are parallel; cannot triangulate");
  const double wa = w.dot(a.direction);
  const double wb = w.dot(b.direction);
  const double s = (ab * wb - wa) / det;
  const double t = (wb - ab * wa) / det;

  const Eigen::Vector3d mid = 0.5 * ((a.origin + s * a.direction) + (b.origin + t * b.direction));
  Triangulation out;
  out.point = {mid.x(), mid.y(), mid.z()};
  out.reprojection_error =
      0.5 * (distance(cam_top.project(out.point), p_top) + distance(cam_front.project(out.point), p_front));
  return out;
}

StereoRig make_default_rig(const TankBounds& tank) {
  tank.validate();
  const Point3D c = tank.center();
  const double span = std::max(tank.x_max - tank.x_min, tank.y_max - tank.y_min);
  const double standoff = 1.5 * span;  // camera distance to the nearest tank face

  // Top: camera x = world x, camera y = -world y, looking down (-z).
  Eigen::Matrix3d r_top;
  r_top << 1, 0, 0, 0, -1, 0, 0, 0, -1;
  const Eigen::Vector3d top_center(c.x, c.y, tank.z_max + standoff);
  // Front: camera x = world x, camera y = -world z, looking along +y.
  Eigen::Matrix3d r_front;
  r_front << 1, 0, 0, 0, 0, -1, 0, 1, 0;
  const Eigen::Vector3d front_center(c.x, tank.y_min - standoff, c.z);

  const double f = 2000.0;
  const int top_w = 1600, top_h = 1600;
  const int front_w = 1600, front_h = 960;
  StereoRig rig{
      CameraModel(View::Top, {f, f, top_w / 2.0, top_h / 2.0}, r_top, -r_top * top_center, top_w, top_h),
      CameraModel(View::Front, {f, f, front_w / 2.0, front_h / 2.0}, r_front, -r_front * front_center, front_w,
                  front_h)};
  return rig;
}

}  // namespace ft3d
