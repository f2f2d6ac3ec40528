// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

// Cross-view association of 2D tracklets into 3D tracklets.
//
// Every (top, front) tracklet pair that shares frames becomes a candidate
// node weighted by how well the pair triangulates inside the tank. Nodes
// that reuse one 2D tracklet and whose other-view tracklets are disjoint in
// time are chained by directed edges weighted by the implied swimming speed
// and the time gap. 3D tracklets are then read off the graph by repeatedly
// taking the highest-scoring path and deleting every node that shares a 2D
// tracklet with it.

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "ft3d/geometry.hpp"
#include "ft3d/track2d.hpp"

namespace ft3d {

struct AssocParams {
  int alpha = 10;                         // min detections per 2D tracklet
  double tau_p = 25.0;                    // temporal decay, frames
  double lambda_err = 1.0 / 8.03;         // 1 / mean training reprojection error (px)
  double lambda_s = 1.0 / (2.13 + 2.32);  // 1 / (mean + std) of training speed (cm/s)
  double fps = 60.0;

  void validate() const;
};

/// Frames present in both tracklets, ascending.
std::vector<int> frame_intersection(const Tracklet2D& top, const Tracklet2D& front);

/// Temporal extents [first, last] share at least one frame.
bool extents_overlap(const Tracklet2D& a, const Tracklet2D& b);

/// Median with the mean of the two middle values for even sizes.
double median(std::vector<double> values);

struct FrameMatch {
  int frame = 0;
  Point3D point;
  double reprojection_error = 0.0;
  int candidate = 0;   // index into the front detection's candidates
  bool valid = false;  // triangulated inside the tank
};

struct NodeCandidate {
  int id = 0;
  int top_id = 0;
  int front_id = 0;
  std::vector<FrameMatch> matches;  // one per intersecting frame, ascending
  std::vector<double> weights;      // exp(-lambda_err * err) for valid frames, frame order
  std::size_t union_size = 0;       // |F_T u F_F|
  double weight = 0.0;              // median(weights) * |weights| / union_size

  const FrameMatch& first_valid() const;
  const FrameMatch& last_valid() const;
};

/// Builds the node for a tracklet pair, or nothing when the pair shares no
/// frame or no frame triangulates inside the tank (weight 0).
std::optional<NodeCandidate> node_weight(const Tracklet2D& top, const Tracklet2D& front, const StereoRig& rig,
                                         const TankBounds& tank, double lambda_err);

/// exp(-lambda_s * s) * exp(-t_d / tau_p) * (W_from + W_to), with t_d the
/// frame gap between the last valid point of `from` and the first of `to`
/// (at least one frame) and s the implied speed in cm/s.
double edge_weight(const NodeCandidate& from, const NodeCandidate& to, double lambda_s, double tau_p, double fps);

struct DagEdge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

/// Weighted DAG in a form the path search can work on without knowing
/// about tracklets. `tracklets[i]` lists the 2D tracklet keys node i uses;
/// nodes sharing a key are removed together with an extracted path.
struct Dag {
  std::vector<double> node_weights;
  std::vector<std::array<int, 2>> tracklets;
  std::vector<DagEdge> edges;

  std::size_t size() const { return node_weights.size(); }
};

struct PathResult {
  std::vector<int> nodes;
  double score = 0.0;
};

/// Kahn order over alive nodes; throws std::logic_error on a cycle.
std::vector<int> topological_order(const Dag& dag, const std::vector<char>& alive);

/// Path maximising the sum of node and edge weights among alive nodes.
/// Equal scores resolve to the lexicographically smallest node sequence.
std::optional<PathResult> longest_path(const Dag& dag, const std::vector<char>& alive);

/// Repeated longest-path extraction until no node is left.
std::vector<PathResult> extract_paths(const Dag& dag);

struct AssociationGraph {
  std::vector<NodeCandidate> nodes;
  std::vector<DagEdge> edges;

  /// Top ids map to key 2*id, front ids to 2*id+1.
  Dag dag() const;
};

AssociationGraph build_graph(const std::vector<Tracklet2D>& top, const std::vector<Tracklet2D>& front,
                             const AssocParams& params, const StereoRig& rig, const TankBounds& tank);

struct Tracklet3DEntry {
  std::optional<Point3D> point;  // absent for 2D-only frames
  std::optional<Point2D> top;
  std::optional<Point2D> front;
  int top_id = -1;
  int front_id = -1;
};

struct Tracklet3D {
  int id = 0;
  std::map<int, Tracklet3DEntry> frames;
  std::vector<int> nodes;  // source node ids, path order

  std::size_t point_count() const;
};

std::vector<Tracklet3D> extract_3d_tracklets(const AssociationGraph& graph, const std::vector<Tracklet2D>& top,
                                             const std::vector<Tracklet2D>& front);

/// build_graph followed by extract_3d_tracklets.
std::vector<Tracklet3D> associate_views(const std::vector<Tracklet2D>& top, const std::vector<Tracklet2D>& front,
                                        const AssocParams& params, const StereoRig& rig, const TankBounds& tank);

}  // namespace ft3d
