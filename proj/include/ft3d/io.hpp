// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#pragma once

// CSV and JSON formats shared by the CLI stages.
//
// Every CSV starts with optional "# key=value" lines, then a header row.
// Empty fields mean "absent". Doubles are written in shortest round-trip
// form, so write -> read -> write is byte-stable.

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ft3d/complexity.hpp"
#include "ft3d/crossview.hpp"
#include "ft3d/detection.hpp"
#include "ft3d/evaluation.hpp"
#include "ft3d/geometry.hpp"
#include "ft3d/groundtruth.hpp"
#include "ft3d/track2d.hpp"
#include "ft3d/track3d.hpp"

namespace ft3d {

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::filesystem::path& path, long line, const std::string& what);
  FormatError(const std::filesystem::path& path, const std::string& what);
};

using HeaderMeta = std::map<std::string, std::string>;

std::string format_double(double v);

// frame,view,x,y,bbox_x,bbox_y,bbox_w,bbox_h,confidence,c1x,c1y,c2x,c2y,c3x,c3y[,covxx,covxy,covyy]
void write_detections_csv(const std::filesystem::path& path, const DetectionSet& dets, const HeaderMeta& meta = {});
DetectionSet read_detections_csv(const std::filesystem::path& path, HeaderMeta* meta = nullptr);

// tracklet_id,view,frame,x,y,c1x,c1y,c2x,c2y,c3x,c3y,covxx,covxy,covyy
void write_tracklets_csv(const std::filesystem::path& path, const std::vector<Tracklet2D>& top,
                         const std::vector<Tracklet2D>& front, const HeaderMeta& meta = {});
void read_tracklets_csv(const std::filesystem::path& path, std::vector<Tracklet2D>& top,
                        std::vector<Tracklet2D>& front, HeaderMeta* meta = nullptr);

// tracklet_id,frame,x,y,z,top_tracklet_id,front_tracklet_id
void write_tracklets3d_csv(const std::filesystem::path& path, const std::vector<Tracklet3D>& tracklets,
                           const HeaderMeta& meta = {});
std::vector<Tracklet3D> read_tracklets3d_csv(const std::filesystem::path& path, HeaderMeta* meta = nullptr);

// frame,fish_id,x,y,z
void write_tracks_csv(const std::filesystem::path& path, const std::vector<Track3D>& tracks, const HeaderMeta& meta = {});
FrameObjects read_tracks_csv(const std::filesystem::path& path, HeaderMeta* meta = nullptr);

// frame,fish_id,view,bbox_x,bbox_y,bbox_w,bbox_h,head_x,head_y,occluded,x3d,y3d,z3d
// Sequence meta (fps, n_frames, n_fish) travels in the comment header.
void write_annotations_csv(const std::filesystem::path& path, const GroundTruth& gt, const HeaderMeta& meta = {});
GroundTruth read_annotations_csv(const std::filesystem::path& path, HeaderMeta* meta = nullptr);

/// {"tank": {...}, "cameras": [{"view", "width", "height", "fx", "fy",
/// "cx", "cy", "rotation": [[3]x3], "translation": [3]}, ...]}
void write_calibration_json(const std::filesystem::path& path, const StereoRig& rig, const TankBounds& tank);
StereoRig read_calibration_json(const std::filesystem::path& path, TankBounds* tank = nullptr);

inline constexpr int kReportSchemaVersion = 1;

std::string report_json(const EvalReport& r, const HeaderMeta& meta = {});
std::string report_json(const ComplexityReport& r, const HeaderMeta& meta = {});
std::string report_table(const EvalReport& r);
std::string report_table(const ComplexityReport& r);

}  // namespace ft3d
