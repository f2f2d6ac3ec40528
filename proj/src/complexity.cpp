// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/complexity.hpp"

#include <stdexcept>

namespace ft3d {

std::map<int, std::vector<OcclusionEvent>> occlusion_events(const GroundTruth& gt, View view) {
  std::map<int, std::vector<OcclusionEvent>> out;
  for (const auto& [frame, fish] : gt.frames) {
    for (const auto& [id, e] : fish) {
      if (!e.of(view).occluded) continue;
      auto& events = out[id];
      if (!events.empty() && events.back().end == frame - 1)
        events.back().end = frame;
      else
        events.push_back({frame, frame});
    }
  }
  return out;
}

ComplexityStats complexity_stats(const GroundTruth& gt, View view) {
  if (!(gt.fps > 0.0)) throw std::invalid_argument("fps must be positive");
  ComplexityStats s;
  const double duration = gt.duration();
  const auto events = occlusion_events(gt, view);

  long n_events = 0, event_frames = 0, gap_frames = 0, n_gaps = 0;
  for (const auto& [id, list] : events) {
    int cursor = 0;  // first frame after the previous event
    for (const OcclusionEvent& ev : list) {
      ++n_events;
      event_frames += ev.length();
      if (ev.start > cursor) {
        gap_frames += ev.start - cursor;
        ++n_gaps;
      }
      cursor = ev.end + 1;
    }
    if (gt.n_frames > cursor) {
      gap_frames += gt.n_frames - cursor;
      ++n_gaps;
    }
  }

  if (n_events == 0) {
    s.tbo = duration;
    return s;
  }
  s.oc = n_events / duration;
  s.ol = static_cast<double>(event_frames) / n_events / gt.fps;
  s.tbo = n_gaps > 0 ? static_cast<double>(gap_frames) / n_gaps / gt.fps : 0.0;

  double ibo_sum = 0.0;
  long flagged = 0;
  for (const auto& [frame, fish] : gt.frames) {
    for (const auto& [i, ei] : fish) {
      const GtView& vi = ei.of(view);
      if (!vi.occluded) continue;
      ++flagged;
      if (!(vi.bbox.area() > 0.0)) continue;
      double inter = 0.0;
      for (const auto& [j, ej] : fish) {
        if (j == i || !ej.of(view).occluded) continue;
        inter += intersection_area(vi.bbox, ej.of(view).bbox);
      }
      ibo_sum += inter / vi.bbox.area();
    }
  }
  s.ibo = flagged > 0 ? ibo_sum / flagged : 0.0;
  return s;
}

double complexity_psi(const ComplexityStats& top, const ComplexityStats& front) {
  double psi = 0.0;
  for (const ComplexityStats* s : {&top, &front}) {
    if (s->oc == 0.0) continue;
    if (!(s->tbo > 0.0)) throw std::invalid_argument("complexity_psi: TBO must be positive");
    psi += s->oc * s->ol * s->ibo / s->tbo;
  }
  return psi / 2.0;
}

ComplexityReport complexity_report(const GroundTruth& gt) {
  ComplexityReport r;
  r.top = complexity_stats(gt, View::Top);
  r.front = complexity_stats(gt, View::Front);
  r.psi = complexity_psi(r.top, r.front);
  return r;
}

}  // namespace ft3d
