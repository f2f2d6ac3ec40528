// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/crossview.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace ft3d {

void AssocParams::validate() const {
  if (alpha <= 0) throw std::invalid_argument("assoc.alpha must be positive");
  if (!(tau_p > 0.0)) throw std::invalid_argument("assoc.tau_p must be positive");
  if (!(lambda_err > 0.0)) throw std::invalid_argument("assoc.lambda_err must be positive");
  if (!(lambda_s > 0.0)) throw std::invalid_argument("assoc.lambda_s must be positive");
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be positive");
}

std::vector<int> frame_intersection(const Tracklet2D& top, const Tracklet2D& front) {
  std::vector<int> out;
  auto a = top.detections.begin(), b = front.detections.begin();
  while (a != top.detections.end() && b != front.detections.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      out.push_back(a->first);
      ++a;
      ++b;
    }
  }
  return out;
}

bool extents_overlap(const Tracklet2D& a, const Tracklet2D& b) {
  return std::max(a.first_frame(), b.first_frame()) <= std::min(a.last_frame(), b.last_frame());
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

const FrameMatch& NodeCandidate::first_valid() const {
  auto it = std::find_if(matches.begin(), matches.end(), [](const FrameMatch& m) { return m.valid; });
  if (it == matches.end()) throw std::logic_error("node has no valid frame");
  return *it;
}

const FrameMatch& NodeCandidate::last_valid() const {
  auto it = std::find_if(matches.rbegin(), matches.rend(), [](const FrameMatch& m) { return m.valid; });
  if (it == matches.rend()) throw std::logic_error("node has no valid frame");
  return *it;
}

std::optional<NodeCandidate> node_weight(const Tracklet2D& top, const Tracklet2D& front, const StereoRig& rig,
                                         const TankBounds& tank, double lambda_err) {
  const std::vector<int> shared = frame_intersection(top, front);
  if (shared.empty()) return std::nullopt;

  NodeCandidate node;
  node.top_id = top.id;
  node.front_id = front.id;
  node.union_size = top.size() + front.size() - shared.size();

  for (int f : shared) {
    const Detection& dt = top.detections.at(f);
    const Detection& df = front.detections.at(f);
    std::vector<Point2D> cands = df.candidates;
    if (cands.empty()) cands.push_back(df.head);

    FrameMatch m;
    m.frame = f;
    bool any = false;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      Triangulation tri;
      try {
        tri = triangulate(dt.head, cands[k], rig.top, rig.front);
      } catch (const GeometryError&) {
        continue;
      }
      if (!any || tri.reprojection_error < m.reprojection_error) {
        m.point = tri.point;
        m.reprojection_error = tri.reprojection_error;
        m.candidate = static_cast<int>(k);
        any = true;
      }
    }
    if (!any) continue;
    m.valid = in_tank(m.point, tank);
    if (m.valid) node.weights.push_back(std::exp(-lambda_err * m.reprojection_error));
    node.matches.push_back(m);
  }

  if (node.weights.empty()) return std::nullopt;
  node.weight = median(node.weights) * static_cast<double>(node.weights.size()) / static_cast<double>(node.union_size);
  if (!(node.weight > 0.0)) return std::nullopt;
  return node;
}

double edge_weight(const NodeCandidate& from, const NodeCandidate& to, double lambda_s, double tau_p, double fps) {
  const FrameMatch& a = from.last_valid();
  const FrameMatch& b = to.first_valid();
  const double t_d = std::max(1, b.frame - a.frame);
  const double speed = distance(a.point, b.point) / (t_d / fps);
  return std::exp(-lambda_s * speed) * std::exp(-t_d / tau_p) * (from.weight + to.weight);
}

std::vector<int> topological_order(const Dag& dag, const std::vector<char>& alive) {
  const int n = static_cast<int>(dag.size());
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (const DagEdge& e : dag.edges) {
    if (!alive[e.from] || !alive[e.to]) continue;
    out[e.from].push_back(e.to);
    ++indeg[e.to];
  }
  std::vector<int> order, ready;
  for (int i = n - 1; i >= 0; --i)
    if (alive[i] && indeg[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    const int i = ready.back();
    ready.pop_back();
    order.push_back(i);
    for (int j : out[i])
      if (--indeg[j] == 0) ready.push_back(j);
  }
  const auto n_alive = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
  if (order.size() != n_alive) throw std::logic_error("association graph contains a cycle");
  return order;
}

namespace {

std::vector<int> trace(const std::vector<int>& pred, int end) {
  std::vector<int> seq;
  for (int i = end; i >= 0; i = pred[i]) seq.push_back(i);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

}  // namespace

std::optional<PathResult> longest_path(const Dag& dag, const std::vector<char>& alive) {
  const int n = static_cast<int>(dag.size());
  const std::vector<int> order = topological_order(dag, alive);
  if (order.empty()) return std::nullopt;

  std::vector<std::vector<const DagEdge*>> incoming(n);
  for (const DagEdge& e : dag.edges)
    if (alive[e.from] && alive[e.to]) incoming[e.to].push_back(&e);

  std::vector<double> best(n, 0.0);
  std::vector<int> pred(n, -1);
  for (int j : order) {
    best[j] = dag.node_weights[j];
    for (const DagEdge* e : incoming[j]) {
      const double s = best[e->from] + e->weight + dag.node_weights[j];
      if (s > best[j]) {
        best[j] = s;
        pred[j] = e->from;
      } else if (s == best[j]) {
        std::vector<int> cand = trace(pred, e->from);
        cand.push_back(j);
        if (cand < trace(pred, j)) pred[j] = e->from;
      }
    }
  }

  int end = -1;
  for (int j : order) {
    if (end < 0 || best[j] > best[end] || (best[j] == best[end] && trace(pred, j) < trace(pred, end))) end = j;
  }
  return PathResult{trace(pred, end), best[end]};
}

std::vector<PathResult> extract_paths(const Dag& dag) {
  std::vector<char> alive(dag.size(), 1);
  std::vector<PathResult> out;
  while (auto path = longest_path(dag, alive)) {
    std::vector<int> used;
    for (int i : path->nodes)
      for (int key : dag.tracklets[i]) used.push_back(key);
    for (std::size_t i = 0; i < dag.size(); ++i) {
      if (!alive[i]) continue;
      for (int key : dag.tracklets[i])
        if (std::find(used.begin(), used.end(), key) != used.end()) alive[i] = 0;
    }
    for (int i : path->nodes) alive[i] = 0;
    out.push_back(std::move(*path));
  }
  return out;
}

Dag AssociationGraph::dag() const {
  Dag d;
  for (const NodeCandidate& n : nodes) {
    d.node_weights.push_back(n.weight);
    d.tracklets.push_back({2 * n.top_id, 2 * n.front_id + 1});
  }
  d.edges = edges;
  return d;
}

AssociationGraph build_graph(const std::vector<Tracklet2D>& top, const std::vector<Tracklet2D>& front,
                             const AssocParams& params, const StereoRig& rig, const TankBounds& tank) {
  params.validate();
  auto keep = [&](const std::vector<Tracklet2D>& in) {
    std::vector<const Tracklet2D*> out;
    for (const Tracklet2D& t : in)
      if (static_cast<int>(t.size()) >= params.alpha) out.push_back(&t);
    return out;
  };
  const auto tops = keep(top);
  const auto fronts = keep(front);

  AssociationGraph g;
  std::vector<std::pair<const Tracklet2D*, const Tracklet2D*>> src;
  for (const Tracklet2D* t : tops) {
    for (const Tracklet2D* f : fronts) {
      auto node = node_weight(*t, *f, rig, tank, params.lambda_err);
      if (!node) continue;
      node->id = static_cast<int>(g.nodes.size());
      g.nodes.push_back(std::move(*node));
      src.emplace_back(t, f);
    }
  }

  const int n = static_cast<int>(g.nodes.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& [ti, fi] = src[i];
      const auto& [tj, fj] = src[j];
      const bool paired = (ti == tj && !extents_overlap(*fi, *fj)) || (fi == fj && !extents_overlap(*ti, *tj));
      if (!paired) continue;
      if (g.nodes[i].first_valid().frame >= g.nodes[j].first_valid().frame) continue;
      g.edges.push_back({i, j, edge_weight(g.nodes[i], g.nodes[j], params.lambda_s, params.tau_p, params.fps)});
    }
  }
  return g;
}

std::size_t Tracklet3D::point_count() const {
  return static_cast<std::size_t>(
      std::count_if(frames.begin(), frames.end(), [](const auto& kv) { return kv.second.point.has_value(); }));
}

namespace {

const Tracklet2D& by_id(const std::vector<Tracklet2D>& ts, int id) {
  if (id >= 0 && id < static_cast<int>(ts.size()) && ts[id].id == id) return ts[id];
  auto it = std::find_if(ts.begin(), ts.end(), [&](const Tracklet2D& t) { return t.id == id; });
  if (it == ts.end()) throw std::invalid_argument("unknown tracklet id " + std::to_string(id));
  return *it;
}

// Fill front heads for frames without a triangulated choice by following
// the nearest candidate from the neighbouring chosen frame.
void resolve_front_heads(Tracklet3D& t, const std::map<int, const Detection*>& pending) {
  auto reference = [&](int frame, bool forward) -> std::optional<Point2D> {
    if (forward) {
      for (auto it = t.frames.lower_bound(frame); it != t.frames.begin();) {
        --it;
        if (it->second.front) return it->second.front;
      }
    } else {
      for (auto it = t.frames.upper_bound(frame); it != t.frames.end(); ++it)
        if (it->second.front) return it->second.front;
    }
    return std::nullopt;
  };
  for (const auto& [frame, det] : pending) {
    std::vector<Point2D> cands = det->candidates;
    if (cands.empty()) cands.push_back(det->head);
    auto ref = reference(frame, true);
    if (!ref) ref = reference(frame, false);
    Point2D chosen = cands.front();
    if (ref) {
      double best = distance(chosen, *ref);
      for (const Point2D& c : cands) {
        const double d = distance(c, *ref);
        if (d < best) {
          best = d;
          chosen = c;
        }
      }
    }
    t.frames[frame].front = chosen;
  }
}

}  // namespace

std::vector<Tracklet3D> extract_3d_tracklets(const AssociationGraph& graph, const std::vector<Tracklet2D>& top,
                                             const std::vector<Tracklet2D>& front) {
  std::vector<Tracklet3D> out;
  for (const PathResult& path : extract_paths(graph.dag())) {
    Tracklet3D t;
    t.id = static_cast<int>(out.size());
    t.nodes = path.nodes;

    for (int ni : path.nodes) {
      const NodeCandidate& node = graph.nodes[ni];
      const Tracklet2D& ft = by_id(front, node.front_id);
      for (const FrameMatch& m : node.matches) {
        if (!m.valid || t.frames.count(m.frame)) continue;
        Tracklet3DEntry& e = t.frames[m.frame];
        e.point = m.point;
        e.top = by_id(top, node.top_id).detections.at(m.frame).head;
        const Detection& df = ft.detections.at(m.frame);
        e.front = df.candidates.empty() ? df.head : df.candidates[m.candidate];
        e.top_id = node.top_id;
        e.front_id = node.front_id;
      }
    }

    std::map<int, const Detection*> pending;
    for (int ni : path.nodes) {
      const NodeCandidate& node = graph.nodes[ni];
      for (const auto& [f, d] : by_id(top, node.top_id).detections) {
        Tracklet3DEntry& e = t.frames[f];
        if (e.top) continue;
        e.top = d.head;
        e.top_id = node.top_id;
      }
      for (const auto& [f, d] : by_id(front, node.front_id).detections) {
        Tracklet3DEntry& e = t.frames[f];
        if (e.front_id >= 0) continue;
        e.front_id = node.front_id;
        pending.emplace(f, &d);
      }
    }
    resolve_front_heads(t, pending);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Tracklet3D> associate_views(const std::vector<Tracklet2D>& top, const std::vector<Tracklet2D>& front,
                                        const AssocParams& params, const StereoRig& rig, const TankBounds& tank) {
  return extract_3d_tracklets(build_graph(top, front, params, rig, tank), top, front);
}

}  // namespace ft3d
