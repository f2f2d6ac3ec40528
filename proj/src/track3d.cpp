// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/track3d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace ft3d {

void StitchParams::validate() const {
  if (n_fish < 1) throw std::invalid_argument("n_fish must be at least 1");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("stitch.beta must lie in (0, 1)");
  if (!(main_fraction > 0.0 && main_fraction <= 1.0))
    throw std::invalid_argument("stitch.main_fraction must lie in (0, 1]");
  if (!(overlap_scale >= 0.0)) throw std::invalid_argument("stitch.overlap_scale must be non-negative");
}

PointTrack to_point_track(const Tracklet3D& t) {
  PointTrack p;
  p.id = t.id;
  for (const auto& [f, e] : t.frames)
    if (e.point) p.points.emplace(f, *e.point);
  return p;
}

int temporal_overlap(int a_first, int a_last, int b_first, int b_last) {
  return std::max(0, std::min(a_last, b_last) - std::max(a_first, b_first) + 1);
}

namespace {

int overlap(const PointTrack& a, const PointTrack& b) {
  return temporal_overlap(a.first_frame(), a.last_frame(), b.first_frame(), b.last_frame());
}

struct SetScore {
  double median = 0.0;
  long total = 0;
  std::vector<int> ids;

  bool better_than(const SetScore& o) const {
    if (median != o.median) return median > o.median;
    if (total != o.total) return total > o.total;
    return ids < o.ids;
  }
};

}  // namespace

std::optional<std::vector<int>> select_initial(const std::vector<PointTrack>& tracklets, const StitchParams& params) {
  params.validate();
  std::vector<int> pool;
  for (int i = 0; i < static_cast<int>(tracklets.size()); ++i)
    if (!tracklets[i].empty()) pool.push_back(i);
  const int k = params.n_fish;
  if (static_cast<int>(pool.size()) < k) return std::nullopt;

  std::vector<int> seeds = pool;
  std::stable_sort(seeds.begin(), seeds.end(), [&](int a, int b) {
    const auto& ta = tracklets[a];
    const auto& tb = tracklets[b];
    return std::tuple(-ta.duration(), -static_cast<long>(ta.points.size()), ta.id) <
           std::tuple(-tb.duration(), -static_cast<long>(tb.points.size()), tb.id);
  });
  const auto n_seeds = static_cast<std::size_t>(std::max(1.0, std::ceil(params.main_fraction * pool.size())));
  seeds.resize(std::min(seeds.size(), n_seeds));

  std::optional<SetScore> best;
  std::vector<int> best_set;
  std::vector<int> chosen;

  auto evaluate = [&]() {
    int shortest = tracklets[chosen[0]].duration();
    long total = 0;
    for (int i : chosen) {
      shortest = std::min(shortest, tracklets[i].duration());
      total += tracklets[i].duration();
    }
    const double threshold = params.overlap_scale * shortest;
    std::vector<double> overlaps;
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      for (std::size_t b = a + 1; b < chosen.size(); ++b) {
        const int o = overlap(tracklets[chosen[a]], tracklets[chosen[b]]);
        if (o <= 0 || o <= threshold) return;
        overlaps.push_back(o);
      }
    }
    SetScore s;
    s.median = overlaps.empty() ? tracklets[chosen[0]].duration() : median(overlaps);
    s.total = total;
    for (int i : chosen) s.ids.push_back(tracklets[i].id);
    std::sort(s.ids.begin(), s.ids.end());
    if (!best || s.better_than(*best)) {
      best = s;
      best_set = chosen;
    }
  };

  for (int seed : seeds) {
    std::vector<int> partners;
    for (int j : pool)
      if (j != seed && overlap(tracklets[seed], tracklets[j]) > 0) partners.push_back(j);
    chosen.assign(1, seed);
    // Enumerate (k-1)-subsets of partners in lexicographic order.
    auto recurse = [&](auto&& self, std::size_t start) -> void {
      if (static_cast<int>(chosen.size()) == k) {
        evaluate();
        return;
      }
      for (std::size_t i = start; i < partners.size(); ++i) {
        chosen.push_back(partners[i]);
        self(self, i + 1);
        chosen.pop_back();
      }
    };
    recurse(recurse, 0);
  }
  if (!best) return std::nullopt;
  std::sort(best_set.begin(), best_set.end());
  return best_set;
}

std::vector<int> gallery_rank(const std::vector<PointTrack>& gallery, const std::vector<Track3D>& mains) {
  struct Key {
    bool overlaps_all;
    long gap;
  };
  std::vector<Key> keys;
  for (const PointTrack& g : gallery) {
    Key key{!mains.empty(), std::numeric_limits<long>::max()};
    for (const Track3D& m : mains) {
      long gap = 0;
      if (g.first_frame() > m.last_frame())
        gap = g.first_frame() - m.last_frame();
      else if (m.first_frame() > g.last_frame())
        gap = m.first_frame() - g.last_frame();
      else
        gap = 0;
      const bool ov = temporal_overlap(g.first_frame(), g.last_frame(), m.first_frame(), m.last_frame()) > 0;
      key.overlaps_all = key.overlaps_all && ov;
      key.gap = std::min(key.gap, gap);
    }
    keys.push_back(key);
  }
  std::vector<int> order(gallery.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (keys[a].overlaps_all != keys[b].overlaps_all) return !keys[a].overlaps_all;
    return keys[a].gap < keys[b].gap;
  });
  return order;
}

SwitchCost internal_switch_cost(const PointTrack& gallery, const std::map<int, Point3D>& main) {
  SwitchCost out;
  if (gallery.empty() || main.empty()) return out;
  const int lo = std::max(gallery.first_frame(), main.begin()->first);
  const int hi = std::min(gallery.last_frame(), main.rbegin()->first);
  if (lo > hi) return out;

  // Layer l holds up to two nodes: source 0 = gallery, 1 = main.
  struct Layer {
    std::optional<Point3D> p[2];
  };
  std::vector<Layer> layers;
  for (int f = lo; f <= hi; ++f) {
    Layer layer;
    if (auto it = gallery.points.find(f); it != gallery.points.end()) layer.p[0] = it->second;
    if (auto it = main.find(f); it != main.end()) layer.p[1] = it->second;
    if (layer.p[0] || layer.p[1]) layers.push_back(layer);
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t n = layers.size();
  std::vector<std::array<double, 2>> cost(n, {kInf, kInf});
  std::vector<std::array<int, 2>> from(n, {-1, -1});
  for (int s = 0; s < 2; ++s)
    if (layers[0].p[s]) cost[0][s] = 0.0;
  for (std::size_t l = 1; l < n; ++l) {
    for (int s = 0; s < 2; ++s) {
      if (!layers[l].p[s]) continue;
      // Staying on the same source is tried first so it wins ties.
      for (int r : {s, 1 - s}) {
        if (!layers[l - 1].p[r] || cost[l - 1][r] == kInf) continue;
        const double c = cost[l - 1][r] + distance(*layers[l - 1].p[r], *layers[l].p[s]);
        if (c < cost[l][s]) {
          cost[l][s] = c;
          from[l][s] = r;
        }
      }
    }
  }

  int s = cost[n - 1][0] <= cost[n - 1][1] ? 0 : 1;
  double in_sum = 0.0, out_sum = 0.0;
  int in_n = 0, out_n = 0;
  for (std::size_t l = n - 1; l > 0; --l) {
    const int r = from[l][s];
    if (r != s) {
      const double d = distance(*layers[l - 1].p[r], *layers[l].p[s]);
      if (r == 0) {
        in_sum += d;
        ++in_n;
      } else {
        out_sum += d;
        ++out_n;
      }
    }
    s = r;
  }

  if (in_n + out_n > 0) {
    if (in_n > 0) out.in = in_sum / in_n;
    if (out_n > 0) out.out = out_sum / out_n;
    out.mean = (in_sum + out_sum) / (in_n + out_n);
    return out;
  }
  double sum = 0.0;
  int count = 0;
  for (const Layer& layer : layers) {
    if (layer.p[0] && layer.p[1]) {
      sum += distance(*layer.p[0], *layer.p[1]);
      ++count;
    }
  }
  if (count > 0) out.in = out.out = out.mean = sum / count;
  return out;
}

std::vector<double> normalize_measure(const std::vector<double>& raw) {
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    out[i] = total > 0.0 ? raw[i] / total : 1.0 / static_cast<double>(raw.size());
  return out;
}

AssignmentCost assignment_cost(const PointTrack& gallery, const std::vector<Track3D>& mains) {
  if (mains.empty()) throw std::invalid_argument("assignment_cost needs at least one main track");
  const std::size_t m = mains.size();
  AssignmentCost out;
  out.cost.assign(m, std::numeric_limits<double>::infinity());
  out.valid.assign(m, 0);

  std::vector<char> overlapping(m);
  for (std::size_t i = 0; i < m; ++i)
    overlapping[i] = temporal_overlap(gallery.first_frame(), gallery.last_frame(), mains[i].first_frame(),
                                      mains[i].last_frame()) > 0;
  out.all_overlap = std::all_of(overlapping.begin(), overlapping.end(), [](char c) { return c != 0; });

  std::vector<std::size_t> idx;
  std::vector<std::vector<double>> measures;
  if (!out.all_overlap) {
    std::vector<double> space, time;
    for (std::size_t i = 0; i < m; ++i) {
      if (overlapping[i]) continue;
      const Track3D& t = mains[i];
      const bool after = gallery.first_frame() > t.last_frame();
      const auto& [fa, pa] = after ? *t.points.rbegin() : *gallery.points.rbegin();
      const auto& [fb, pb] = after ? *gallery.points.begin() : *t.points.begin();
      space.push_back(distance(pa, pb));
      time.push_back(static_cast<double>(fb - fa));
      idx.push_back(i);
    }
    measures = {space, time};
  } else {
    std::vector<double> sw, shared, ratio;
    for (std::size_t i = 0; i < m; ++i) {
      const SwitchCost c = internal_switch_cost(gallery, mains[i].points);
      if (!std::isfinite(c.mean)) continue;
      int n_shared = 0;
      for (const auto& [f, p] : gallery.points) n_shared += mains[i].points.count(f) ? 1 : 0;
      sw.push_back(c.mean);
      shared.push_back(n_shared);
      ratio.push_back(static_cast<double>(n_shared) / static_cast<double>(gallery.points.size()));
      idx.push_back(i);
    }
    measures = {sw, shared, ratio};
  }
  if (idx.empty()) return out;

  std::vector<double> total(idx.size(), 0.0);
  for (const auto& raw : measures) {
    const auto norm = normalize_measure(raw);
    for (std::size_t k = 0; k < idx.size(); ++k) total[k] += norm[k];
  }
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.cost[idx[k]] = total[k] / static_cast<double>(measures.size());
    out.valid[idx[k]] = 1;
  }
  return out;
}

std::optional<int> choose_main(const AssignmentCost& cost, double beta) {
  int best = -1, second = -1;
  for (int i = 0; i < static_cast<int>(cost.cost.size()); ++i) {
    if (!cost.valid[i]) continue;
    if (best < 0 || cost.cost[i] < cost.cost[best]) {
      second = best;
      best = i;
    } else if (second < 0 || cost.cost[i] < cost.cost[second]) {
      second = i;
    }
  }
  if (best < 0) return std::nullopt;
  if (second >= 0 && cost.cost[second] - cost.cost[best] < beta) return std::nullopt;
  return best;
}

std::vector<Track3D> associate(const std::vector<Tracklet3D>& tracklets, const StitchParams& params) {
  params.validate();
  std::vector<PointTrack> pts;
  for (const Tracklet3D& t : tracklets) {
    PointTrack p = to_point_track(t);
    if (!p.empty()) pts.push_back(std::move(p));
  }

  const auto initial = select_initial(pts, params);
  std::vector<Track3D> mains;
  if (!initial) {
    for (const PointTrack& p : pts) mains.push_back({static_cast<int>(mains.size()) + 1, p.points, {p.id}});
    return mains;
  }

  std::vector<PointTrack> gallery;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    if (std::binary_search(initial->begin(), initial->end(), i))
      mains.push_back({static_cast<int>(mains.size()) + 1, pts[i].points, {pts[i].id}});
    else
      gallery.push_back(pts[i]);
  }

  while (!gallery.empty()) {
    const int head = gallery_rank(gallery, mains).front();
    const PointTrack g = std::move(gallery[head]);
    gallery.erase(gallery.begin() + head);
    const auto target = choose_main(assignment_cost(g, mains), params.beta);
    if (!target) continue;
    Track3D& main = mains[*target];
    for (const auto& [f, p] : g.points) main.points.emplace(f, p);
    main.sources.push_back(g.id);
  }
  return mains;
}

}  // namespace ft3d
