// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

// Stage runners. Each reads its inputs from the run directory and writes
// its output there, so `run_pipeline` and the individual subcommands
// produce the same files.

#include <filesystem>
#include <vector>

#include "ft3d/config.hpp"
#include "ft3d/evaluation.hpp"
#include "ft3d/io.hpp"

namespace ft3d {

struct RunPaths {
  std::filesystem::path dir;

  std::filesystem::path annotations() const { return dir / "annotations.csv"; }
  std::filesystem::path trajectories() const { return dir / "trajectories.csv"; }
  std::filesystem::path calibration() const { return dir / "calibration.json"; }
  std::filesystem::path detections() const { return dir / "detections.csv"; }
  std::filesystem::path tracklets() const { return dir / "tracklets.csv"; }
  std::filesystem::path tracklets3d() const { return dir / "tracklets3d.csv"; }
  std::filesystem::path tracks() const { return dir / "tracks.csv"; }
  std::filesystem::path report_json() const { return dir / "report.json"; }
  std::filesystem::path report_txt() const { return dir / "report.txt"; }
  std::filesystem::path complexity_json() const { return dir / "complexity.json"; }
  std::filesystem::path complexity_txt() const { return dir / "complexity.txt"; }
};

/// frame,fish_id,cx,cy,cz,hx,hy,hz,dx,dy,dz (centre, head, heading)
void write_trajectories_csv(const std::filesystem::path& path, const SyntheticSequence& seq, const HeaderMeta& meta = {});
SyntheticSequence read_trajectories_csv(const std::filesystem::path& path, const SimConfig& cfg, const StereoRig& rig);

/// Renders every frame and runs the top and front detectors against a
/// median background of n_bg uniformly sampled frames.
DetectionSet naive_detections(const SyntheticSequence& seq, const RenderParams& render, const DetectParams& params);

StereoRig config_rig(const PipelineConfig& cfg);
HeaderMeta run_meta(const PipelineConfig& cfg);

void run_simulate(const PipelineConfig& cfg, const RunPaths& paths, bool dump_frames = false);
void run_detect(const PipelineConfig& cfg, const RunPaths& paths);
void run_track2d(const PipelineConfig& cfg, const RunPaths& paths);
void run_associate(const PipelineConfig& cfg, const RunPaths& paths);
void run_stitch(const PipelineConfig& cfg, const RunPaths& paths);
EvalReport run_evaluate(const PipelineConfig& cfg, const RunPaths& paths);
ComplexityReport run_complexity(const PipelineConfig& cfg, const RunPaths& paths);
EvalReport run_pipeline(const PipelineConfig& cfg, const RunPaths& paths);

/// The same chain without touching the disk.
struct InMemoryRun {
  SyntheticSequence seq;
  GroundTruth gt;
  DetectionSet detections;
  std::vector<Tracklet2D> top;
  std::vector<Tracklet2D> front;
  std::vector<Tracklet3D> tracklets3d;
  std::vector<Track3D> tracks;
  EvalReport report;
};

InMemoryRun run_in_memory(const PipelineConfig& cfg);

FrameObjects tracks_to_objects(const std::vector<Track3D>& tracks);

}  // namespace ft3d
