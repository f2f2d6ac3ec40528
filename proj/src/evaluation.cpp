// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "ft3d/hungarian.hpp"
#include "ft3d/simd/kernels.hpp"

namespace ft3d {

FrameObjects gt_objects(const GroundTruth& gt, std::optional<View> view) {
  FrameObjects out;
  for (const auto& [frame, fish] : gt.frames) {
    auto& row = out[frame];
    for (const auto& [id, e] : fish) {
      if (view) {
        const Point2D& h = e.of(*view).head;
        row[id] = {h.u, h.v, 0.0};
      } else {
        row[id] = e.point;
      }
    }
  }
  return out;
}

namespace {

double sq(const Point3D& a, const Point3D& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

// Row-major |a_i - b_j|^2.
std::vector<double> pairwise_sq(const std::vector<Point3D>& a, const std::vector<Point3D>& b) {
  std::vector<double> ax, ay, az, bx, by, bz;
  for (const Point3D& p : a) {
    ax.push_back(p.x);
    ay.push_back(p.y);
    az.push_back(p.z);
  }
  for (const Point3D& p : b) {
    bx.push_back(p.x);
    by.push_back(p.y);
    bz.push_back(p.z);
  }
  std::vector<double> out(a.size() * b.size());
  simd::squared_distances(ax, ay, az, bx, by, bz, out);
  return out;
}

const std::map<int, Point3D>& row_or_empty(const FrameObjects& objs, int frame) {
  static const std::map<int, Point3D> kEmpty;
  auto it = objs.find(frame);
  return it == objs.end() ? kEmpty : it->second;
}

// gt id -> (frame, matched pred id or -1), frames ascending.
std::map<int, std::vector<std::pair<int, int>>> per_gt_status(const std::vector<FrameCorrespondence>& corr) {
  std::map<int, std::vector<std::pair<int, int>>> out;
  for (const FrameCorrespondence& fc : corr) {
    for (const Match& m : fc.matches) out[m.gt_id].emplace_back(fc.frame, m.pred_id);
    for (int g : fc.missed) out[g].emplace_back(fc.frame, -1);
  }
  return out;
}

}  // namespace

std::vector<FrameCorrespondence> match_frames(const FrameObjects& pred, const FrameObjects& gt, double thresh) {
  if (!(thresh > 0.0)) throw std::invalid_argument("match threshold must be positive");
  const double t2 = thresh * thresh;
  std::set<int> frames;
  for (const auto& kv : pred) frames.insert(kv.first);
  for (const auto& kv : gt) frames.insert(kv.first);

  std::map<int, int> last;  // gt id -> most recent matched pred id
  std::vector<FrameCorrespondence> out;
  for (int frame : frames) {
    const auto& g = row_or_empty(gt, frame);
    const auto& p = row_or_empty(pred, frame);
    FrameCorrespondence fc;
    fc.frame = frame;
    std::set<int> used_g, used_p;

    for (const auto& [gid, gp] : g) {
      auto it = last.find(gid);
      if (it == last.end() || used_p.count(it->second)) continue;
      auto pit = p.find(it->second);
      if (pit == p.end()) continue;
      const double d2 = sq(gp, pit->second);
      if (d2 > t2) continue;
      fc.matches.push_back({gid, pit->first, std::sqrt(d2), false});
      used_g.insert(gid);
      used_p.insert(pit->first);
    }

    std::vector<int> rg, rp;
    for (const auto& kv : g)
      if (!used_g.count(kv.first)) rg.push_back(kv.first);
    for (const auto& kv : p)
      if (!used_p.count(kv.first)) rp.push_back(kv.first);
    if (!rg.empty() && !rp.empty()) {
      const int rows = static_cast<int>(rg.size()), cols = static_cast<int>(rp.size());
      std::vector<Point3D> gp, pp;
      for (int id : rg) gp.push_back(g.at(id));
      for (int id : rp) pp.push_back(p.at(id));
      std::vector<double> cost = pairwise_sq(gp, pp);
      for (double& c : cost)
        if (c > t2) c = kForbiddenCost;
      for (const auto& [r, c] : hungarian(cost, rows, cols).pairs) {
        const double d2 = cost[static_cast<std::size_t>(r) * cols + c];
        if (d2 >= kForbiddenCost) continue;
        auto it = last.find(rg[r]);
        const bool sw = it != last.end() && it->second != rp[c];
        fc.matches.push_back({rg[r], rp[c], std::sqrt(d2), sw});
        used_g.insert(rg[r]);
        used_p.insert(rp[c]);
      }
    }

    for (const Match& m : fc.matches) last[m.gt_id] = m.pred_id;
    std::sort(fc.matches.begin(), fc.matches.end(), [](const Match& a, const Match& b) { return a.gt_id < b.gt_id; });
    for (const auto& kv : g)
      if (!used_g.count(kv.first)) fc.missed.push_back(kv.first);
    for (const auto& kv : p)
      if (!used_p.count(kv.first)) fc.false_pos.push_back(kv.first);
    out.push_back(std::move(fc));
  }
  return out;
}

ClearMot clear_mot(const std::vector<FrameCorrespondence>& corr) {
  ClearMot r;
  double dist_sum = 0.0;
  for (const FrameCorrespondence& fc : corr) {
    r.tp += static_cast<long>(fc.matches.size());
    r.fn += static_cast<long>(fc.missed.size());
    r.fp += static_cast<long>(fc.false_pos.size());
    for (const Match& m : fc.matches) {
      dist_sum += m.dist;
      if (m.switched) ++r.idsw;
    }
  }
  r.gt_total = r.tp + r.fn;
  for (const auto& [gid, status] : per_gt_status(corr)) {
    bool seen = false, tracked = false;
    int pending = 0;  // tracked -> missed transitions not yet closed by a later match
    for (const auto& [frame, pid] : status) {
      if (pid >= 0) {
        r.frag += pending;
        pending = 0;
        seen = tracked = true;
      } else {
        if (seen && tracked) ++pending;
        tracked = false;
      }
    }
  }
  if (r.gt_total > 0) {
    r.mota = 100.0 * (1.0 - static_cast<double>(r.fn + r.fp + r.idsw) / static_cast<double>(r.gt_total));
    r.recall = 100.0 * static_cast<double>(r.tp) / static_cast<double>(r.gt_total);
  }
  if (r.tp + r.fp > 0) r.precision = 100.0 * static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp);
  if (r.tp > 0) r.motp = dist_sum / static_cast<double>(r.tp);
  return r;
}

IdMetrics id_metrics(const FrameObjects& pred, const FrameObjects& gt, double thresh) {
  if (!(thresh > 0.0)) throw std::invalid_argument("match threshold must be positive");
  const double t2 = thresh * thresh;
  std::map<int, int> gi, pi;
  long n_gt = 0, n_pred = 0;
  for (const auto& [f, row] : gt)
    for (const auto& kv : row) {
      gi.emplace(kv.first, static_cast<int>(gi.size()));
      ++n_gt;
    }
  for (const auto& [f, row] : pred)
    for (const auto& kv : row) {
      pi.emplace(kv.first, static_cast<int>(pi.size()));
      ++n_pred;
    }

  IdMetrics r;
  const int rows = static_cast<int>(gi.size()), cols = static_cast<int>(pi.size());
  if (rows > 0 && cols > 0) {
    std::vector<long> count(static_cast<std::size_t>(rows) * cols, 0);
    for (const auto& [f, grow] : gt) {
      const auto& prow = row_or_empty(pred, f);
      if (prow.empty()) continue;
      std::vector<Point3D> gp, pp;
      std::vector<int> gk, pk;
      for (const auto& [g, p] : grow) {
        gp.push_back(p);
        gk.push_back(gi[g]);
      }
      for (const auto& [q, p] : prow) {
        pp.push_back(p);
        pk.push_back(pi[q]);
      }
      const auto d2 = pairwise_sq(gp, pp);
      for (std::size_t a = 0; a < gp.size(); ++a)
        for (std::size_t b = 0; b < pp.size(); ++b)
          if (d2[a * pp.size() + b] <= t2) ++count[static_cast<std::size_t>(gk[a]) * cols + pk[b]];
    }
    const long top = *std::max_element(count.begin(), count.end());
    std::vector<double> cost(count.size());
    for (std::size_t k = 0; k < count.size(); ++k) cost[k] = static_cast<double>(top - count[k]);
    for (const auto& [rr, cc] : hungarian(cost, rows, cols).pairs) r.idtp += count[static_cast<std::size_t>(rr) * cols + cc];
  }
  r.idfn = n_gt - r.idtp;
  r.idfp = n_pred - r.idtp;
  if (n_pred > 0) r.idp = 100.0 * r.idtp / n_pred;
  if (n_gt > 0) r.idr = 100.0 * r.idtp / n_gt;
  if (n_gt + n_pred > 0) r.idf1 = 100.0 * 2.0 * r.idtp / (n_gt + n_pred);
  return r;
}

MtMl mt_ml(const std::vector<FrameCorrespondence>& corr) {
  MtMl r;
  for (const auto& [gid, status] : per_gt_status(corr)) {
    const auto hit = std::count_if(status.begin(), status.end(), [](const auto& s) { return s.second >= 0; });
    // Integer comparisons keep the 80 % / 20 % boundaries exact.
    const long n = static_cast<long>(status.size());
    if (hit * 5 >= n * 4)
      ++r.mt;
    else if (hit * 5 <= n)
      ++r.ml;
    else
      ++r.pt;
  }
  return r;
}

Mtbf mtbf(const std::vector<FrameCorrespondence>& corr) {
  Mtbf r;
  const auto per_gt = per_gt_status(corr);
  if (per_gt.empty()) return r;
  for (const auto& [gid, status] : per_gt) {
    long tracked = 0, seg_fail = 0, miss_gaps = 0;
    int prev = -2;  // -2: start of track, -1: miss, else pred id
    for (const auto& [frame, pid] : status) {
      if (pid >= 0) {
        ++tracked;
        if (prev >= 0 && prev != pid) ++seg_fail;  // id change ends the running segment
      } else {
        if (prev >= 0) ++seg_fail;
        if (prev != -1) ++miss_gaps;
      }
      prev = pid;
    }
    r.mtbf_s += static_cast<double>(tracked) / static_cast<double>(std::max(1L, seg_fail));
    r.mtbf_m += static_cast<double>(tracked) / static_cast<double>(std::max(1L, seg_fail + miss_gaps));
  }
  r.mtbf_s /= static_cast<double>(per_gt.size());
  r.mtbf_m /= static_cast<double>(per_gt.size());
  return r;
}

EvalReport evaluate(const FrameObjects& pred, const FrameObjects& gt, double thresh) {
  EvalReport r;
  r.thresh = thresh;
  const auto corr = match_frames(pred, gt, thresh);
  r.mot = clear_mot(corr);
  r.id = id_metrics(pred, gt, thresh);
  r.mtml = mt_ml(corr);
  r.mtbf = mtbf(corr);
  std::set<int> ids;
  for (const auto& [f, row] : gt)
    for (const auto& kv : row) ids.insert(kv.first);
  r.n_gt_tracks = static_cast<int>(ids.size());
  return r;
}

FrameObjects oracle_tracks(const GroundTruth& gt, std::optional<View> view, bool new_id_after_gap) {
  FrameObjects out;
  std::map<int, int> current;    // fish -> emitted id
  std::map<int, bool> visible;   // fish -> visible in previous frame
  int next_id = 0;
  for (const auto& kv : gt.frames)
    for (const auto& f : kv.second) next_id = std::max(next_id, f.first + 1);

  for (const auto& [frame, fish] : gt.frames) {
    for (const auto& [id, e] : fish) {
      const bool occ = view ? e.of(*view).occluded : (e.top.occluded || e.front.occluded);
      if (occ) {
        visible[id] = false;
        continue;
      }
      auto cur = current.find(id);
      if (cur == current.end()) {
        cur = current.emplace(id, id).first;
      } else if (new_id_after_gap && !visible[id]) {
        cur->second = next_id++;
      }
      visible[id] = true;
      if (view) {
        const Point2D& h = e.of(*view).head;
        out[frame][cur->second] = {h.u, h.v, 0.0};
      } else {
        out[frame][cur->second] = e.point;
      }
    }
  }
  return out;
}

}  // namespace ft3d
