// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ft3d/complexity.hpp"
#include "ft3d/detect.hpp"

namespace ft3d {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

double to_double(const std::filesystem::path& path, long line, const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw FormatError(path, line, "bad number '" + s + "'");
  return v;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream o(path);
  if (!o) throw FormatError(path, "cannot open file for writing");
  o << text;
}

// Ground-truth or rendered detections, then the configured degradation.
DetectionSet detections_for(const PipelineConfig& cfg, const SyntheticSequence* seq, const GroundTruth* gt) {
  DetectionSet raw;
  switch (cfg.source) {
    case DetectionSource::GroundTruth: raw = gt_detections(*gt); break;
    case DetectionSource::Naive: raw = naive_detections(*seq, cfg.render, cfg.detect); break;
    case DetectionSource::External: raw = ingest_external_detections(cfg.external_path, cfg.min_confidence); break;
  }
  const DegradeModel& d = cfg.degrade;
  if (d.drop_rate == 0.0 && d.jitter_sigma == 0.0 && d.ghost_rate == 0.0) return raw;
  int n_frames = gt ? gt->n_frames : 0;
  for (View v : {View::Top, View::Front})
    if (!raw.of(v).empty()) n_frames = std::max(n_frames, raw.of(v).rbegin()->first + 1);
  return degrade(raw, d, config_rig(cfg), n_frames, cfg.seed + 1);
}

}  // namespace

void write_trajectories_csv(const std::filesystem::path& path, const SyntheticSequence& seq, const HeaderMeta& meta) {
  std::ofstream o(path);
  if (!o) throw FormatError(path, "cannot open file for writing");
  for (const auto& [k, v] : meta) o << "# " << k << '=' << v << '\n';
  o << "frame,fish_id,cx,cy,cz,hx,hy,hz,dx,dy,dz\n";
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    for (std::size_t i = 0; i < seq.frames[f].size(); ++i) {
      const FishState& s = seq.frames[f][i];
      o << f << ',' << i + 1;
      for (const Point3D* p : {&s.center, &s.head, &s.heading})
        o << ',' << format_double(p->x) << ',' << format_double(p->y) << ',' << format_double(p->z);
      o << '\n';
    }
  }
}

SyntheticSequence read_trajectories_csv(const std::filesystem::path& path, const SimConfig& cfg, const StereoRig& rig) {
  std::ifstream in(path);
  if (!in) throw FormatError(path, "cannot open file");
  SyntheticSequence seq;
  seq.cfg = cfg;
  seq.rig = rig;
  std::string line;
  long n = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "frame,fish_id,cx,cy,cz,hx,hy,hz,dx,dy,dz") throw FormatError(path, n, "unexpected header");
      header = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 11) throw FormatError(path, n, "expected 11 fields");
    const int frame = static_cast<int>(to_double(path, n, f[0]));
    const int fish = static_cast<int>(to_double(path, n, f[1]));
    if (frame < 0 || fish < 1) throw FormatError(path, n, "bad frame or fish id");
    if (static_cast<int>(seq.frames.size()) <= frame) seq.frames.resize(frame + 1);
    auto& states = seq.frames[frame];
    if (static_cast<int>(states.size()) < fish) states.resize(fish);
    FishState& s = states[fish - 1];
    s.center = {to_double(path, n, f[2]), to_double(path, n, f[3]), to_double(path, n, f[4])};
    s.head = {to_double(path, n, f[5]), to_double(path, n, f[6]), to_double(path, n, f[7])};
    s.heading = {to_double(path, n, f[8]), to_double(path, n, f[9]), to_double(path, n, f[10])};
  }
  return seq;
}

DetectionSet naive_detections(const SyntheticSequence& seq, const RenderParams& render, const DetectParams& params) {
  const int n = static_cast<int>(seq.frames.size());
  DetectionSet out;
  if (n == 0) return out;
  std::vector<GrayImage> top_samples, front_samples;
  for (int f : uniform_sample_indices(n, params.n_bg)) {
    auto [t, fr] = render_frame(seq, f, render);
    top_samples.push_back(std::move(t));
    front_samples.push_back(std::move(fr));
  }
  const GrayImage bg_top = estimate_background(top_samples);
  const GrayImage bg_front = estimate_background(front_samples);
  for (int f = 0; f < n; ++f) {
    auto [t, fr] = render_frame(seq, f, render);
    auto top = detect_top(t, bg_top, params, f);
    auto front = detect_front(fr, bg_front, params, f);
    if (!top.empty()) out.top[f] = std::move(top);
    if (!front.empty()) out.front[f] = std::move(front);
  }
  return out;
}

StereoRig config_rig(const PipelineConfig& cfg) {
  if (cfg.calibration.empty()) return make_default_rig(cfg.sim.tank);
  return read_calibration_json(cfg.calibration);
}

HeaderMeta run_meta(const PipelineConfig& cfg) { return {{"seed", std::to_string(cfg.seed)}}; }

void run_simulate(const PipelineConfig& cfg, const RunPaths& paths, bool dump_frames) {
  std::filesystem::create_directories(paths.dir);
  SyntheticSequence seq = simulate(cfg.sim);
  seq.rig = config_rig(cfg);
  write_calibration_json(paths.calibration(), seq.rig, cfg.sim.tank);
  write_trajectories_csv(paths.trajectories(), seq, run_meta(cfg));
  write_annotations_csv(paths.annotations(), annotate(seq), run_meta(cfg));
  if (dump_frames) {
    const auto frames = paths.dir / "frames";
    std::filesystem::create_directories(frames);
    for (int f = 0; f < static_cast<int>(seq.frames.size()); ++f) {
      auto [t, fr] = render_frame(seq, f, cfg.render);
      char name[32];
      std::snprintf(name, sizeof name, "%06d", f);
      write_pgm(frames / ("top_" + std::string(name) + ".pgm"), t);
      write_pgm(frames / ("front_" + std::string(name) + ".pgm"), fr);
    }
  }
}

void run_detect(const PipelineConfig& cfg, const RunPaths& paths) {
  std::filesystem::create_directories(paths.dir);
  DetectionSet dets;
  if (cfg.source == DetectionSource::GroundTruth) {
    const GroundTruth gt = read_annotations_csv(paths.annotations());
    dets = detections_for(cfg, nullptr, &gt);
  } else if (cfg.source == DetectionSource::Naive) {
    TankBounds tank;
    const StereoRig rig = read_calibration_json(paths.calibration(), &tank);
    SimConfig sc = cfg.sim;
    sc.tank = tank;
    const SyntheticSequence seq = read_trajectories_csv(paths.trajectories(), sc, rig);
    dets = detections_for(cfg, &seq, nullptr);
  } else {
    dets = detections_for(cfg, nullptr, nullptr);
  }
  write_detections_csv(paths.detections(), dets, run_meta(cfg));
}

void run_track2d(const PipelineConfig& cfg, const RunPaths& paths) {
  const DetectionSet dets = read_detections_csv(paths.detections());
  write_tracklets_csv(paths.tracklets(), build_tracklets(dets.top, View::Top, cfg.track2d),
                      build_tracklets(dets.front, View::Front, cfg.track2d), run_meta(cfg));
}

void run_associate(const PipelineConfig& cfg, const RunPaths& paths) {
  std::vector<Tracklet2D> top, front;
  read_tracklets_csv(paths.tracklets(), top, front);
  TankBounds tank;
  const StereoRig rig = std::filesystem::exists(paths.calibration()) ? read_calibration_json(paths.calibration(), &tank)
                                                                     : config_rig(cfg);
  if (!std::filesystem::exists(paths.calibration())) tank = cfg.sim.tank;
  write_tracklets3d_csv(paths.tracklets3d(), associate_views(top, front, cfg.assoc, rig, tank), run_meta(cfg));
}

void run_stitch(const PipelineConfig& cfg, const RunPaths& paths) {
  write_tracks_csv(paths.tracks(), associate(read_tracklets3d_csv(paths.tracklets3d()), cfg.stitch), run_meta(cfg));
}

EvalReport run_evaluate(const PipelineConfig& cfg, const RunPaths& paths) {
  const GroundTruth gt = read_annotations_csv(paths.annotations());
  const EvalReport r = evaluate(read_tracks_csv(paths.tracks()), gt_objects(gt), cfg.eval_thresh_3d);
  write_text(paths.report_json(), report_json(r, run_meta(cfg)));
  write_text(paths.report_txt(), report_table(r));
  return r;
}

ComplexityReport run_complexity(const PipelineConfig& cfg, const RunPaths& paths) {
  const ComplexityReport r = complexity_report(read_annotations_csv(paths.annotations()));
  write_text(paths.complexity_json(), report_json(r, run_meta(cfg)));
  write_text(paths.complexity_txt(), report_table(r));
  return r;
}

EvalReport run_pipeline(const PipelineConfig& cfg, const RunPaths& paths) {
  run_simulate(cfg, paths);
  run_detect(cfg, paths);
  run_track2d(cfg, paths);
  run_associate(cfg, paths);
  run_stitch(cfg, paths);
  run_complexity(cfg, paths);
  return run_evaluate(cfg, paths);
}

FrameObjects tracks_to_objects(const std::vector<Track3D>& tracks) {
  FrameObjects out;
  for (const Track3D& t : tracks)
    for (const auto& [f, p] : t.points) out[f][t.fish_id] = p;
  return out;
}

InMemoryRun run_in_memory(const PipelineConfig& cfg) {
  InMemoryRun r;
  r.seq = simulate(cfg.sim);
  r.seq.rig = config_rig(cfg);
  r.gt = annotate(r.seq);
  r.detections = detections_for(cfg, &r.seq, &r.gt);
  r.top = build_tracklets(r.detections.top, View::Top, cfg.track2d);
  r.front = build_tracklets(r.detections.front, View::Front, cfg.track2d);
  r.tracklets3d = associate_views(r.top, r.front, cfg.assoc, r.seq.rig, cfg.sim.tank);
  r.tracks = associate(r.tracklets3d, cfg.stitch);
  r.report = evaluate(tracks_to_objects(r.tracks), gt_objects(r.gt), cfg.eval_thresh_3d);
  return r;
}

}  // namespace ft3d
