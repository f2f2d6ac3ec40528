// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include <doctest.h>

#include <random>

#include "ft3d/geometry.hpp"

using namespace ft3d;

namespace {

CameraModel simple_camera() {
  return CameraModel(View::Top, {1000, 1000, 500, 500}, Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero(), 1000,
                     1000);
}

}  // namespace

TEST_CASE("pinhole projection by hand") {
  const CameraModel cam = simple_camera();
  const Point2D p = cam.project({1, 0, 10});
  CHECK(p.u == doctest::Approx(600.0).epsilon(1e-12));
  CHECK(p.v == doctest::Approx(500.0).epsilon(1e-12));
  for (double d : {0.5, 3.0, 100.0}) {
    const Point2D c = cam.project({0, 0, d});
    CHECK(c.u == 500.0);
    CHECK(c.v == 500.0);
  }
}

TEST_CASE("points on or behind the image plane are rejected") {
  const CameraModel cam = simple_camera();
  CHECK_THROWS_AS(cam.project({0, 0, 0}), GeometryError);
  CHECK_THROWS_AS(cam.project({1, 1, -2}), GeometryError);
}

TEST_CASE("back projection passes through the pixel") {
  const StereoRig rig = make_default_rig();
  const Point3D p{12.0, 7.5, 4.0};
  for (const CameraModel* cam : {&rig.top, &rig.front}) {
    const Ray r = cam->back_project(cam->project(p));
    const Eigen::Vector3d q(p.x, p.y, p.z);
    const Eigen::Vector3d off = q - r.origin;
    const double perp = (off - off.dot(r.direction) * r.direction).norm();
    CHECK(perp < 1e-9);
    CHECK(r.direction.norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("triangulation recovers projected points") {
  const TankBounds tank;
  const StereoRig rig = make_default_rig(tank);
  const Point3D c = tank.center();
  const Triangulation t = triangulate(rig.top.project(c), rig.front.project(c), rig.top, rig.front);
  CHECK(distance(t.point, c) < 1e-6);
  CHECK(t.reprojection_error < 1e-6);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0, 30), uz(0, 15);
  for (int i = 0; i < 200; ++i) {
    const Point3D p{ux(rng), ux(rng), uz(rng)};
    const Triangulation r = triangulate(rig.top.project(p), rig.front.project(p), rig.top, rig.front);
    CHECK(distance(r.point, p) < 1e-6);
  }
}

TEST_CASE("reprojection error grows with the perturbation") {
  const StereoRig rig = make_default_rig();
  const Point3D p{10, 20, 5};
  const Point2D pt = rig.top.project(p);
  double prev = -1.0;
  for (double du : {0.0, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    Point2D pf = rig.front.project(p);
    pf.u += du;
    const double err = triangulate(pt, pf, rig.top, rig.front).reprojection_error;
    if (du > 0) CHECK(err > prev);
    prev = err;
  }
  CHECK(prev > 0.0);
}

TEST_CASE("parallel rays cannot be triangulated") {
  const CameraModel a = simple_camera();
  const CameraModel b(View::Front, {1000, 1000, 500, 500}, Eigen::Matrix3d::Identity(), Eigen::Vector3d(-5, 0, 0),
                      1000, 1000);
  CHECK_THROWS_AS(triangulate({500, 500}, {500, 500}, a, b), GeometryError);
}

TEST_CASE("tank bounds are closed") {
  const TankBounds tank;
  CHECK(in_tank({15, 15, 7.5}, tank));
  CHECK_FALSE(in_tank({31, 0, 0}, tank));
  CHECK(in_tank({0, 0, 0}, tank));
  CHECK(in_tank({30, 30, 15}, tank));
  CHECK_FALSE(in_tank({15, 15, 15.000001}, tank));
}

TEST_CASE("invalid camera and tank parameters throw") {
  TankBounds bad;
  bad.x_max = -1;
  CHECK_THROWS(bad.validate());
  CHECK_THROWS(CameraModel(View::Top, {-1, 1, 0, 0}, Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero(), 10, 10));
}

TEST_CASE("default rig sees the whole tank") {
  const TankBounds tank;
  const StereoRig rig = make_default_rig(tank);
  for (double x : {tank.x_min, tank.x_max})
    for (double y : {tank.y_min, tank.y_max})
      for (double z : {tank.z_min, tank.z_max}) {
        CHECK(rig.top.in_image(rig.top.project({x, y, z})));
        CHECK(rig.front.in_image(rig.front.project({x, y, z})));
      }
}
