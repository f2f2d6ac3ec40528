// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace ft3d {

namespace {

// Egg asymmetry: half width grows by this fraction towards the head.
constexpr double kEgg = 0.3;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Eigen::Vector3d vec(const Point3D& p) { return {p.x, p.y, p.z}; }
Point3D pt(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

// Rotates unit vector `from` towards `to` by at most `max_angle` radians.
Eigen::Vector3d turn_towards(const Eigen::Vector3d& from, const Eigen::Vector3d& to, double max_angle) {
  const double angle = std::acos(std::clamp(from.dot(to), -1.0, 1.0));
  if (angle <= max_angle) return to;
  Eigen::Vector3d axis = from.cross(to);
  if (axis.norm() < 1e-12) axis = from.unitOrthogonal();
  return Eigen::AngleAxisd(max_angle, axis.normalized()) * from;
}

}  // namespace

int SimConfig::n_frames() const { return static_cast<int>(std::lround(duration_s * fps)); }

void SimConfig::validate() const {
  if (n_fish < 1) throw std::invalid_argument("sim n_fish must be at least 1");
  if (!(duration_s > 0.0)) throw std::invalid_argument("sim.duration_s must be positive");
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be positive");
  if (std::abs(duration_s * fps - n_frames()) > 1e-9) throw std::invalid_argument("fps * duration_s must be integral");
  if (!(speed > 0.0)) throw std::invalid_argument("sim.speed must be positive");
  if (!(reversion > 0.0)) throw std::invalid_argument("sim.reversion must be positive");
  if (!(turn_rate > 0.0)) throw std::invalid_argument("sim.turn_rate must be positive");
  if (!(body.half_length > 0.0 && body.half_width > 0.0)) throw std::invalid_argument("sim body axes must be positive");
  if (!(body.head_offset > 0.0 && body.head_offset <= 1.0))
    throw std::invalid_argument("sim.head_offset must lie in (0, 1]");
  tank.validate();
  const double lane = (tank.x_max - tank.x_min) / (separate_lanes ? n_fish : 1);
  if (lane <= 2.0 * body.half_length + 0.5) throw std::invalid_argument("tank or lane too narrow for the fish body");
}

SyntheticSequence simulate(const SimConfig& cfg) {
  cfg.validate();
  SyntheticSequence seq;
  seq.cfg = cfg;
  seq.rig = make_default_rig(cfg.tank);

  const int n = cfg.n_fish;
  const double a = cfg.body.half_length;
  const double dt = 1.0 / cfg.fps;
  // Mean of a 3D isotropic Gaussian speed is 2*sqrt(2/pi) times the per-axis std.
  const double axis_std = cfg.speed / (2.0 * std::sqrt(2.0 / std::numbers::pi));
  const double decay = std::exp(-cfg.reversion * dt);
  const double kick = axis_std * std::sqrt(1.0 - decay * decay);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<Eigen::Vector3d> lo(n), hi(n), pos(n), vel(n), head(n, Eigen::Vector3d::UnitX());
  const double max_turn = cfg.turn_rate * dt;
  const double lane = (cfg.tank.x_max - cfg.tank.x_min) / n;
  for (int i = 0; i < n; ++i) {
    lo[i] = {cfg.tank.x_min + a, cfg.tank.y_min + a, cfg.tank.z_min + a};
    hi[i] = {cfg.tank.x_max - a, cfg.tank.y_max - a, cfg.tank.z_max - a};
    if (cfg.separate_lanes) {
      lo[i].x() = cfg.tank.x_min + i * lane + a + 0.25;
      hi[i].x() = cfg.tank.x_min + (i + 1) * lane - a - 0.25;
    }
    for (int k = 0; k < 3; ++k) {
      std::uniform_real_distribution<double> u(lo[i][k], hi[i][k]);
      pos[i][k] = u(rng);
    }
    for (int k = 0; k < 3; ++k) vel[i][k] = axis_std * normal(rng);
    if (vel[i].norm() > 1e-9) head[i] = vel[i].normalized();
  }

  seq.frames.resize(cfg.n_frames());
  for (int f = 0; f < cfg.n_frames(); ++f) {
    if (f > 0) {
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < 3; ++k) vel[i][k] = decay * vel[i][k] + kick * normal(rng);
        pos[i] += vel[i] * dt;
        for (int k = 0; k < 3; ++k) {
          if (pos[i][k] < lo[i][k]) {
            pos[i][k] = 2.0 * lo[i][k] - pos[i][k];
            vel[i][k] = -vel[i][k];
          } else if (pos[i][k] > hi[i][k]) {
            pos[i][k] = 2.0 * hi[i][k] - pos[i][k];
            vel[i][k] = -vel[i][k];
          }
          pos[i][k] = std::clamp(pos[i][k], lo[i][k], hi[i][k]);
        }
      }
    }
    auto& states = seq.frames[f];
    states.resize(n);
    for (int i = 0; i < n; ++i) {
      if (f > 0 && vel[i].norm() > 1e-9) head[i] = turn_towards(head[i], vel[i].normalized(), max_turn);
      states[i].center = pt(pos[i]);
      states[i].heading = pt(head[i]);
      states[i].head = pt(pos[i] + cfg.body.head_offset * a * head[i]);
    }
  }
  return seq;
}

ProjectedFish project_fish(const FishState& s, const FishBody& body, const CameraModel& cam) {
  const Eigen::Vector3d c = vec(s.center), h = vec(s.heading);
  const Point2D pc = cam.project(s.center);
  const Point2D tip = cam.project(pt(c + body.half_length * h));
  const Point2D tail = cam.project(pt(c - body.half_length * h));
  const double depth = (cam.rotation() * c + cam.translation()).z();

  ProjectedFish out;
  out.head = cam.project(s.head);
  out.half_width = cam.intrinsics().fx * body.half_width / depth;
  const double du = tip.u - tail.u, dv = tip.v - tail.v;
  const double len = std::hypot(du, dv);
  out.axis = len > 1e-9 ? Point2D{du / len, dv / len} : Point2D{1.0, 0.0};
  out.half_length = std::max(0.5 * len, out.half_width);
  out.center = pc;
  return out;
}

bool ProjectedFish::contains(double u, double v) const {
  // Shape origin sits behind the centroid so that the area centroid lands on `center`.
  const double shift = 0.25 * kEgg * half_length;
  const double du = u - (center.u - shift * axis.u), dv = v - (center.v - shift * axis.v);
  const double s = (du * axis.u + dv * axis.v) / half_length;
  const double t = (-du * axis.v + dv * axis.u) / half_width;
  if (s < -1.0 || s > 1.0) return false;
  return std::abs(t) <= std::sqrt(1.0 - s * s) * (1.0 + kEgg * s);
}

BBox ProjectedFish::bounds() const {
  const double shift = 0.25 * kEgg * half_length;
  const double ou = center.u - shift * axis.u, ov = center.v - shift * axis.v;
  double u0 = ou, u1 = ou, v0 = ov, v1 = ov;
  constexpr int kSteps = 64;
  for (int k = 0; k <= kSteps; ++k) {
    const double s = -1.0 + 2.0 * k / kSteps;
    const double w = std::sqrt(std::max(0.0, 1.0 - s * s)) * (1.0 + kEgg * s) * half_width;
    for (double sign : {-1.0, 1.0}) {
      const double u = ou + s * half_length * axis.u - sign * w * axis.v;
      const double v = ov + s * half_length * axis.v + sign * w * axis.u;
      u0 = std::min(u0, u);
      u1 = std::max(u1, u);
      v0 = std::min(v0, v);
      v1 = std::max(v1, v);
    }
  }
  return {u0, v0, u1 - u0, v1 - v0};
}

namespace {

BBox clip(const BBox& b, const CameraModel& cam) {
  const double x0 = std::clamp(b.x, 0.0, cam.width() - 1.0), x1 = std::clamp(b.x + b.w, 0.0, cam.width() - 1.0);
  const double y0 = std::clamp(b.y, 0.0, cam.height() - 1.0), y1 = std::clamp(b.y + b.h, 0.0, cam.height() - 1.0);
  return {x0, y0, x1 - x0, y1 - y0};
}

Point2D clamp_to(const Point2D& p, const CameraModel& cam) {
  return {std::clamp(p.u, 0.0, cam.width() - 1.0), std::clamp(p.v, 0.0, cam.height() - 1.0)};
}

// Rounded N(0, sigma) offsets, indexed by 16 random bits per pixel. A fresh
// normal draw for every pixel dominated render time.
std::vector<int> noise_table(double sigma) {
  std::vector<int> t(1 << 16);
  std::mt19937_64 rng(0x6e6f697365ULL);
  std::normal_distribution<double> noise(0.0, sigma);
  for (int& v : t) v = static_cast<int>(std::lround(noise(rng)));
  return t;
}

}  // namespace

GroundTruth annotate(const SyntheticSequence& seq) {
  GroundTruth gt;
  gt.fps = seq.cfg.fps;
  gt.n_frames = static_cast<int>(seq.frames.size());
  gt.n_fish = seq.cfg.n_fish;
  for (int f = 0; f < gt.n_frames; ++f) {
    auto& row = gt.frames[f];
    const auto& states = seq.frames[f];
    for (int i = 0; i < static_cast<int>(states.size()); ++i) {
      GtEntry& e = row[i + 1];
      e.point = states[i].head;
      for (View v : {View::Top, View::Front}) {
        const CameraModel& cam = v == View::Top ? seq.rig.top : seq.rig.front;
        const ProjectedFish pf = project_fish(states[i], seq.cfg.body, cam);
        e.of(v).bbox = clip(pf.bounds(), cam);
        e.of(v).head = clamp_to(pf.head, cam);
      }
    }
    for (View v : {View::Top, View::Front}) {
      for (auto& [i, ei] : row)
        for (auto& [j, ej] : row)
          if (i < j && intersection_area(ei.of(v).bbox, ej.of(v).bbox) > 0.0) ei.of(v).occluded = ej.of(v).occluded = true;
    }
  }
  return gt;
}

std::pair<GrayImage, GrayImage> render_frame(const SyntheticSequence& seq, int frame, const RenderParams& params) {
  if (frame < 0 || frame >= static_cast<int>(seq.frames.size())) throw std::out_of_range("render_frame: frame index");
  const std::vector<int> table = params.noise_sigma > 0.0 ? noise_table(params.noise_sigma) : std::vector<int>{};
  auto draw = [&](const CameraModel& cam, int view_index) {
    GrayImage img(cam.width(), cam.height(), params.background);
    for (const FishState& s : seq.frames[frame]) {
      const ProjectedFish pf = project_fish(s, seq.cfg.body, cam);
      const BBox b = pf.bounds();
      const int x0 = std::max(0, static_cast<int>(std::floor(b.x)));
      const int x1 = std::min(cam.width() - 1, static_cast<int>(std::ceil(b.x + b.w)));
      const int y0 = std::max(0, static_cast<int>(std::floor(b.y)));
      const int y1 = std::min(cam.height() - 1, static_cast<int>(std::ceil(b.y + b.h)));
      for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
          if (pf.contains(x, y)) img.at(x, y) = params.fish;
    }
    if (params.noise_sigma > 0.0) {
      std::mt19937_64 rng(mix(seq.cfg.seed ^ mix(static_cast<std::uint64_t>(frame) * 2 + view_index)));
      const std::span<std::uint8_t> px = img.pixels();
      std::uint64_t bits = 0;
      for (std::size_t i = 0; i < px.size(); ++i) {
        if (i % 4 == 0) bits = rng();
        px[i] = static_cast<std::uint8_t>(std::clamp(px[i] + table[bits & 0xffff], 0, 255));
        bits >>= 16;
      }
    }
    return img;
  };
  return {draw(seq.rig.top, 0), draw(seq.rig.front, 1)};
}

DetectionSet gt_detections(const GroundTruth& gt) {
  DetectionSet out;
  for (const auto& [frame, fish] : gt.frames) {
    for (View v : {View::Top, View::Front}) {
      auto& list = out.of(v)[frame];
      for (const auto& [id, e] : fish) {
        Detection d;
        d.frame = frame;
        d.view = v;
        d.head = e.of(v).head;
        d.candidates = {d.head};
        d.centroid = d.head;
        d.bbox = e.of(v).bbox;
        list.push_back(d);
      }
    }
  }
  return out;
}

DetectionSet degrade(const DetectionSet& in, const DegradeModel& model, const StereoRig& rig, int n_frames,
                     std::uint64_t seed) {
  if (!(model.drop_rate >= 0.0 && model.drop_rate <= 1.0)) throw std::invalid_argument("degrade.drop_rate must lie in [0, 1]");
  if (!(model.ghost_rate >= 0.0 && model.ghost_rate <= 1.0)) throw std::invalid_argument("degrade.ghost_rate must lie in [0, 1]");
  if (!(model.jitter_sigma >= 0.0)) throw std::invalid_argument("degrade.jitter_sigma must be non-negative");

  std::mt19937_64 rng(mix(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  DetectionSet out;
  for (View v : {View::Top, View::Front}) {
    const CameraModel& cam = v == View::Top ? rig.top : rig.front;
    auto jitter = [&](Point2D p) {
      if (model.jitter_sigma > 0.0) {
        p.u += model.jitter_sigma * normal(rng);
        p.v += model.jitter_sigma * normal(rng);
      }
      return clamp_to(p, cam);
    };
    for (int f = 0; f < n_frames; ++f) {
      std::vector<Detection> kept;
      if (auto it = in.of(v).find(f); it != in.of(v).end()) {
        for (const Detection& d : it->second) {
          if (unit(rng) < model.drop_rate) continue;
          Detection j = d;
          j.head = jitter(d.head);
          // Points that coincide with the head move with it.
          for (Point2D& c : j.candidates) c = c == d.head ? j.head : jitter(c);
          j.centroid = d.centroid == d.head ? j.head : jitter(d.centroid);
          kept.push_back(std::move(j));
        }
      }
      if (unit(rng) < model.ghost_rate) {
        Detection g;
        g.frame = f;
        g.view = v;
        g.head = {unit(rng) * (cam.width() - 1), unit(rng) * (cam.height() - 1)};
        g.candidates = {g.head};
        g.centroid = g.head;
        kept.push_back(std::move(g));
      }
      if (!kept.empty()) out.of(v)[f] = std::move(kept);
    }
  }
  return out;
}

}  // namespace ft3d
