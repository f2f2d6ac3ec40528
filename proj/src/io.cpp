// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 ft3d contributors

#include "ft3d/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace ft3d {

FormatError::FormatError(const std::filesystem::path& path, long line, const std::string& what)
    : std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what) {}

FormatError::FormatError(const std::filesystem::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what) {}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

class CsvReader {
 public:
  CsvReader(const std::filesystem::path& path, const std::vector<std::string>& header,
            const std::vector<std::string>& optional_tail = {})
      : path_(path), in_(path) {
    if (!in_) throw FormatError(path, "cannot open file");
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      const std::string t = trim(line);
      if (t.empty()) continue;
      if (t[0] == '#') {
        parse_meta(t.substr(1));
        continue;
      }
      auto fields = split(t);
      std::vector<std::string> full = header;
      full.insert(full.end(), optional_tail.begin(), optional_tail.end());
      const bool base = fields == header;
      const bool extended = !optional_tail.empty() && fields == full;
      if (!base && !extended) throw error("unexpected header '" + t + "'");
      width_ = fields.size();
      has_header_ = true;
      return;
    }
  }

  bool has_header() const { return has_header_; }
  std::size_t width() const { return width_; }
  const HeaderMeta& meta() const { return meta_; }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      fields = split(t);
      if (fields.size() != width_)
        throw error("expected " + std::to_string(width_) + " fields, got " + std::to_string(fields.size()));
      return true;
    }
    return false;
  }

  FormatError error(const std::string& what) const { return FormatError(path_, line_, what); }

  int to_int(const std::string& s, const char* name) const {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw error(std::string("bad integer in ") + name + ": '" + s + "'");
    return v;
  }

  double to_double(const std::string& s, const char* name) const {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v))
      throw error(std::string("bad number in ") + name + ": '" + s + "'");
    return v;
  }

  std::optional<double> opt_double(const std::string& s, const char* name) const {
    if (s.empty()) return std::nullopt;
    return to_double(s, name);
  }

  View to_view(const std::string& s) const {
    try {
      return parse_view(s);
    } catch (const std::invalid_argument& e) {
      throw error(e.what());
    }
  }

 private:
  void parse_meta(const std::string& text) {
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq != std::string::npos) meta_[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
  }

  std::filesystem::path path_;
  std::ifstream in_;
  long line_ = 0;
  HeaderMeta meta_;
  std::size_t width_ = 0;
  bool has_header_ = false;
};

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const HeaderMeta& meta, const std::string& header)
      : path_(path), out_(path) {
    if (!out_) throw FormatError(path, "cannot open file for writing");
    for (const auto& [k, v] : meta) out_ << "# " << k << '=' << v << '\n';
    out_ << header << '\n';
  }
  ~CsvWriter() noexcept(false) {
    out_.flush();
    if (!out_ && std::uncaught_exceptions() == 0) throw FormatError(path_, "write failed");
  }
  std::ofstream& stream() { return out_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

const std::vector<std::string> kDetHeader = {"frame", "view", "x", "y", "bbox_x", "bbox_y", "bbox_w", "bbox_h",
                                             "confidence", "c1x", "c1y", "c2x", "c2y", "c3x", "c3y"};
const std::vector<std::string> kCovTail = {"covxx", "covxy", "covyy"};

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

void write_points_and_cov(std::ostream& o, const Detection& d) {
  for (int k = 0; k < 3; ++k) {
    if (k < static_cast<int>(d.candidates.size()))
      o << ',' << format_double(d.candidates[k].u) << ',' << format_double(d.candidates[k].v);
    else
      o << ",,";
  }
  if (d.cov)
    o << ',' << format_double(d.cov->xx) << ',' << format_double(d.cov->xy) << ',' << format_double(d.cov->yy);
  else
    o << ",,,";
}

// Candidates and covariance start at `at` in the row.
void read_points_and_cov(const CsvReader& r, const std::vector<std::string>& f, std::size_t at, Detection& d) {
  static const char* names[] = {"c1x", "c1y", "c2x", "c2y", "c3x", "c3y"};
  for (int k = 0; k < 3; ++k) {
    const auto& su = f[at + 2 * k];
    const auto& sv = f[at + 2 * k + 1];
    if (su.empty() != sv.empty()) throw r.error("candidate coordinates must come in pairs");
    if (su.empty()) continue;
    d.candidates.push_back({r.to_double(su, names[2 * k]), r.to_double(sv, names[2 * k + 1])});
  }
  if (f.size() >= at + 9) {
    auto xx = r.opt_double(f[at + 6], "covxx"), xy = r.opt_double(f[at + 7], "covxy"),
         yy = r.opt_double(f[at + 8], "covyy");
    if (xx.has_value() != yy.has_value() || xx.has_value() != xy.has_value())
      throw r.error("covariance must be complete or absent");
    if (xx) d.cov = Cov2{*xx, *xy, *yy};
  }
  // Front blob detections list the centroid first.
  d.centroid = d.candidates.size() == 3 ? d.candidates[0] : d.head;
}

}  // namespace

void write_detections_csv(const std::filesystem::path& path, const DetectionSet& dets, const HeaderMeta& meta) {
  std::vector<std::string> header = kDetHeader;
  header.insert(header.end(), kCovTail.begin(), kCovTail.end());
  CsvWriter w(path, meta, join(header));
  auto& o = w.stream();
  std::map<int, std::vector<const Detection*>> rows;
  for (View v : {View::Top, View::Front})
    for (const auto& [frame, list] : dets.of(v))
      for (const Detection& d : list) rows[frame].push_back(&d);
  for (const auto& [frame, list] : rows) {
    for (const Detection* d : list) {
      o << frame << ',' << to_string(d->view) << ',' << format_double(d->head.u) << ',' << format_double(d->head.v);
      if (d->bbox)
        o << ',' << format_double(d->bbox->x) << ',' << format_double(d->bbox->y) << ',' << format_double(d->bbox->w)
          << ',' << format_double(d->bbox->h);
      else
        o << ",,,,";
      o << ',' << opt(d->confidence);
      write_points_and_cov(o, *d);
      o << '\n';
    }
  }
}

DetectionSet read_detections_csv(const std::filesystem::path& path, HeaderMeta* meta) {
  DetectionSet out;
  if (std::filesystem::exists(path) && std::filesystem::file_size(path) == 0) return out;
  CsvReader r(path, kDetHeader, kCovTail);
  if (meta) *meta = r.meta();
  std::vector<std::string> f;
  while (r.next(f)) {
    Detection d;
    d.frame = r.to_int(f[0], "frame");
    d.view = r.to_view(f[1]);
    d.head = {r.to_double(f[2], "x"), r.to_double(f[3], "y")};
    auto bx = r.opt_double(f[4], "bbox_x"), by = r.opt_double(f[5], "bbox_y"), bw = r.opt_double(f[6], "bbox_w"),
         bh = r.opt_double(f[7], "bbox_h");
    const int present = bx.has_value() + by.has_value() + bw.has_value() + bh.has_value();
    if (present != 0 && present != 4) throw r.error("bbox must be complete or absent");
    if (present == 4) d.bbox = BBox{*bx, *by, *bw, *bh};
    d.confidence = r.opt_double(f[8], "confidence");
    if (d.confidence && (*d.confidence < 0.0 || *d.confidence > 100.0)) throw r.error("confidence outside [0, 100]");
    read_points_and_cov(r, f, 9, d);
    out.of(d.view)[d.frame].push_back(std::move(d));
  }
  return out;
}

void write_tracklets_csv(const std::filesystem::path& path, const std::vector<Tracklet2D>& top,
                         const std::vector<Tracklet2D>& front, const HeaderMeta& meta) {
  CsvWriter w(path, meta, "tracklet_id,view,frame,x,y,c1x,c1y,c2x,c2y,c3x,c3y,covxx,covxy,covyy");
  auto& o = w.stream();
  for (const auto* list : {&top, &front}) {
    for (const Tracklet2D& t : *list) {
      for (const auto& [frame, d] : t.detections) {
        o << t.id << ',' << to_string(t.view) << ',' << frame << ',' << format_double(d.head.u) << ','
          << format_double(d.head.v);
        write_points_and_cov(o, d);
        o << '\n';
      }
    }
  }
}

void read_tracklets_csv(const std::filesystem::path& path, std::vector<Tracklet2D>& top, std::vector<Tracklet2D>& front,
                        HeaderMeta* meta) {
  CsvReader r(path, {"tracklet_id", "view", "frame", "x", "y", "c1x", "c1y", "c2x", "c2y", "c3x", "c3y", "covxx",
                     "covxy", "covyy"});
  if (meta) *meta = r.meta();
  std::map<int, Tracklet2D> tmap, fmap;
  std::vector<std::string> f;
  while (r.next(f)) {
    const int id = r.to_int(f[0], "tracklet_id");
    if (id < 0) throw r.error("tracklet_id must be non-negative");
    Detection d;
    d.view = r.to_view(f[1]);
    d.frame = r.to_int(f[2], "frame");
    d.head = {r.to_double(f[3], "x"), r.to_double(f[4], "y")};
    read_points_and_cov(r, f, 5, d);
    Tracklet2D& t = (d.view == View::Top ? tmap : fmap)[id];
    t.id = id;
    t.view = d.view;
    if (!t.detections.emplace(d.frame, d).second) throw r.error("duplicate frame in tracklet");
  }
  top.clear();
  front.clear();
  for (auto& [id, t] : tmap) top.push_back(std::move(t));
  for (auto& [id, t] : fmap) front.push_back(std::move(t));
}

void write_tracklets3d_csv(const std::filesystem::path& path, const std::vector<Tracklet3D>& tracklets,
                           const HeaderMeta& meta) {
  CsvWriter w(path, meta, "tracklet_id,frame,x,y,z,top_tracklet_id,front_tracklet_id");
  auto& o = w.stream();
  for (const Tracklet3D& t : tracklets) {
    for (const auto& [frame, e] : t.frames) {
      o << t.id << ',' << frame << ',';
      if (e.point)
        o << format_double(e.point->x) << ',' << format_double(e.point->y) << ',' << format_double(e.point->z);
      else
        o << ",,";
      o << ',' << (e.top_id >= 0 ? std::to_string(e.top_id) : "") << ','
        << (e.front_id >= 0 ? std::to_string(e.front_id) : "") << '\n';
    }
  }
}

std::vector<Tracklet3D> read_tracklets3d_csv(const std::filesystem::path& path, HeaderMeta* meta) {
  CsvReader r(path, {"tracklet_id", "frame", "x", "y", "z", "top_tracklet_id", "front_tracklet_id"});
  if (meta) *meta = r.meta();
  std::map<int, Tracklet3D> tmap;
  std::vector<std::string> f;
  while (r.next(f)) {
    const int id = r.to_int(f[0], "tracklet_id");
    const int frame = r.to_int(f[1], "frame");
    Tracklet3DEntry e;
    auto x = r.opt_double(f[2], "x"), y = r.opt_double(f[3], "y"), z = r.opt_double(f[4], "z");
    const int present = x.has_value() + y.has_value() + z.has_value();
    if (present != 0 && present != 3) throw r.error("x,y,z must be complete or absent");
    if (present == 3) e.point = Point3D{*x, *y, *z};
    e.top_id = f[5].empty() ? -1 : r.to_int(f[5], "top_tracklet_id");
    e.front_id = f[6].empty() ? -1 : r.to_int(f[6], "front_tracklet_id");
    Tracklet3D& t = tmap[id];
    t.id = id;
    if (!t.frames.emplace(frame, e).second) throw r.error("duplicate frame in tracklet");
  }
  std::vector<Tracklet3D> out;
  for (auto& [id, t] : tmap) out.push_back(std::move(t));
  return out;
}

void write_tracks_csv(const std::filesystem::path& path, const std::vector<Track3D>& tracks, const HeaderMeta& meta) {
  CsvWriter w(path, meta, "frame,fish_id,x,y,z");
  auto& o = w.stream();
  std::map<int, std::map<int, Point3D>> rows;
  for (const Track3D& t : tracks)
    for (const auto& [frame, p] : t.points) rows[frame][t.fish_id] = p;
  for (const auto& [frame, fish] : rows)
    for (const auto& [id, p] : fish)
      o << frame << ',' << id << ',' << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z)
        << '\n';
}

FrameObjects read_tracks_csv(const std::filesystem::path& path, HeaderMeta* meta) {
  CsvReader r(path, {"frame", "fish_id", "x", "y", "z"});
  if (meta) *meta = r.meta();
  FrameObjects out;
  std::vector<std::string> f;
  while (r.next(f)) {
    const int frame = r.to_int(f[0], "frame");
    const int id = r.to_int(f[1], "fish_id");
    const Point3D p{r.to_double(f[2], "x"), r.to_double(f[3], "y"), r.to_double(f[4], "z")};
    if (!out[frame].emplace(id, p).second) throw r.error("duplicate (frame, fish_id)");
  }
  return out;
}

void write_annotations_csv(const std::filesystem::path& path, const GroundTruth& gt, const HeaderMeta& meta) {
  HeaderMeta m = meta;
  m["fps"] = format_double(gt.fps);
  m["n_frames"] = std::to_string(gt.n_frames);
  m["n_fish"] = std::to_string(gt.n_fish);
  CsvWriter w(path, m, "frame,fish_id,view,bbox_x,bbox_y,bbox_w,bbox_h,head_x,head_y,occluded,x3d,y3d,z3d");
  auto& o = w.stream();
  for (const auto& [frame, fish] : gt.frames) {
    for (const auto& [id, e] : fish) {
      for (View v : {View::Top, View::Front}) {
        const GtView& g = e.of(v);
        o << frame << ',' << id << ',' << to_string(v) << ',' << format_double(g.bbox.x) << ','
          << format_double(g.bbox.y) << ',' << format_double(g.bbox.w) << ',' << format_double(g.bbox.h) << ','
          << format_double(g.head.u) << ',' << format_double(g.head.v) << ',' << (g.occluded ? 1 : 0) << ','
          << format_double(e.point.x) << ',' << format_double(e.point.y) << ',' << format_double(e.point.z) << '\n';
      }
    }
  }
}

GroundTruth read_annotations_csv(const std::filesystem::path& path, HeaderMeta* meta) {
  CsvReader r(path, {"frame", "fish_id", "view", "bbox_x", "bbox_y", "bbox_w", "bbox_h", "head_x", "head_y",
                     "occluded", "x3d", "y3d", "z3d"});
  if (meta) *meta = r.meta();
  GroundTruth gt;
  std::map<std::pair<int, int>, int> seen;  // (frame, fish) -> view bitmask
  std::vector<std::string> f;
  while (r.next(f)) {
    const int frame = r.to_int(f[0], "frame");
    const int id = r.to_int(f[1], "fish_id");
    const View v = r.to_view(f[2]);
    const int bit = v == View::Top ? 1 : 2;
    int& mask = seen[{frame, id}];
    if (mask & bit) throw r.error("duplicate (frame, fish_id, view)");
    mask |= bit;
    GtEntry& e = gt.frames[frame][id];
    GtView& g = e.of(v);
    g.bbox = {r.to_double(f[3], "bbox_x"), r.to_double(f[4], "bbox_y"), r.to_double(f[5], "bbox_w"),
              r.to_double(f[6], "bbox_h")};
    g.head = {r.to_double(f[7], "head_x"), r.to_double(f[8], "head_y")};
    if (f[9] != "0" && f[9] != "1") throw r.error("occluded must be 0 or 1");
    g.occluded = f[9] == "1";
    e.point = {r.to_double(f[10], "x3d"), r.to_double(f[11], "y3d"), r.to_double(f[12], "z3d")};
  }
  for (const auto& [key, mask] : seen)
    if (mask != 3)
      throw FormatError(path, "frame " + std::to_string(key.first) + " fish " + std::to_string(key.second) +
                                  " is missing a view");

  const HeaderMeta& m = r.meta();
  auto get = [&](const char* k) -> std::optional<std::string> {
    auto it = m.find(k);
    return it == m.end() ? std::nullopt : std::optional(it->second);
  };
  int max_frame = -1, max_fish = 0;
  for (const auto& [frame, fish] : gt.frames) {
    max_frame = std::max(max_frame, frame);
    max_fish = std::max(max_fish, static_cast<int>(fish.size()));
  }
  try {
    gt.fps = get("fps") ? std::stod(*get("fps")) : 60.0;
    gt.n_frames = get("n_frames") ? std::stoi(*get("n_frames")) : max_frame + 1;
    gt.n_fish = get("n_fish") ? std::stoi(*get("n_fish")) : max_fish;
  } catch (const std::exception&) {
    throw FormatError(path, "bad sequence meta in comment header");
  }
  if (!(gt.fps > 0.0)) throw FormatError(path, "fps must be positive");
  if (gt.n_frames <= max_frame) throw FormatError(path, "n_frames smaller than the largest annotated frame");
  return gt;
}

void write_calibration_json(const std::filesystem::path& path, const StereoRig& rig, const TankBounds& tank) {
  using nlohmann::json;
  json j;
  j["tank"] = {{"x_min", tank.x_min}, {"x_max", tank.x_max}, {"y_min", tank.y_min},
               {"y_max", tank.y_max}, {"z_min", tank.z_min}, {"z_max", tank.z_max}};
  for (const CameraModel* c : {&rig.top, &rig.front}) {
    json cam;
    cam["view"] = std::string(to_string(c->view()));
    cam["width"] = c->width();
    cam["height"] = c->height();
    cam["fx"] = c->intrinsics().fx;
    cam["fy"] = c->intrinsics().fy;
    cam["cx"] = c->intrinsics().cx;
    cam["cy"] = c->intrinsics().cy;
    json rot = json::array();
    for (int r = 0; r < 3; ++r) rot.push_back({c->rotation()(r, 0), c->rotation()(r, 1), c->rotation()(r, 2)});
    cam["rotation"] = rot;
    cam["translation"] = {c->translation().x(), c->translation().y(), c->translation().z()};
    j["cameras"].push_back(cam);
  }
  std::ofstream o(path);
  if (!o) throw FormatError(path, "cannot open file for writing");
  o << std::setw(2) << j << '\n';
}

StereoRig read_calibration_json(const std::filesystem::path& path, TankBounds* tank) {
  using nlohmann::json;
  std::ifstream in(path);
  if (!in) throw FormatError(path, "cannot open file");
  json j;
  try {
    in >> j;
    if (tank) {
      const json& t = j.at("tank");
      *tank = TankBounds{t.at("x_min").get<double>(), t.at("x_max").get<double>(), t.at("y_min").get<double>(),
                         t.at("y_max").get<double>(), t.at("z_min").get<double>(), t.at("z_max").get<double>()};
      tank->validate();
    }
    StereoRig rig;
    bool have[2] = {false, false};
    for (const json& c : j.at("cameras")) {
      const View v = parse_view(c.at("view").get<std::string>());
      Eigen::Matrix3d rot;
      for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k) rot(r, k) = c.at("rotation").at(r).at(k).get<double>();
      const Eigen::Vector3d t(c.at("translation").at(0).get<double>(), c.at("translation").at(1).get<double>(),
                              c.at("translation").at(2).get<double>());
      const Intrinsics k{c.at("fx").get<double>(), c.at("fy").get<double>(), c.at("cx").get<double>(),
                         c.at("cy").get<double>()};
      CameraModel cam(v, k, rot, t, c.at("width").get<int>(), c.at("height").get<int>());
      (v == View::Top ? rig.top : rig.front) = cam;
      have[v == View::Top ? 0 : 1] = true;
    }
    if (!have[0] || !have[1]) throw FormatError(path, "calibration needs one top and one front camera");
    return rig;
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(path, e.what());
  }
}

namespace {

nlohmann::json meta_json(const HeaderMeta& meta) {
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [k, v] : meta) m[k] = v;
  return m;
}

nlohmann::json stats_json(const ComplexityStats& s) {
  return {{"OC", s.oc}, {"OL", s.ol}, {"TBO", s.tbo}, {"IBO", s.ibo}};
}

}  // namespace

std::string report_json(const EvalReport& r, const HeaderMeta& meta) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "evaluation";
  j["meta"] = meta_json(meta);
  j["threshold"] = r.thresh;
  j["gt_tracks"] = r.n_gt_tracks;
  j["MOTA"] = r.mot.mota;
  j["MOTP"] = r.mot.motp;
  j["Prc"] = r.mot.precision;
  j["Rcll"] = r.mot.recall;
  j["ID_Prc"] = r.id.idp;
  j["ID_Rcll"] = r.id.idr;
  j["ID_F1"] = r.id.idf1;
  j["FP"] = r.mot.fp;
  j["FN"] = r.mot.fn;
  j["GT"] = r.mot.gt_total;
  j["MT"] = r.mtml.mt;
  j["PT"] = r.mtml.pt;
  j["ML"] = r.mtml.ml;
  j["ID_Sw"] = r.mot.idsw;
  j["Frag"] = r.mot.frag;
  j["MTBF_s"] = r.mtbf.mtbf_s;
  j["MTBF_m"] = r.mtbf.mtbf_m;
  return j.dump(2) + "\n";
}

std::string report_json(const ComplexityReport& r, const HeaderMeta& meta) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "complexity";
  j["meta"] = meta_json(meta);
  j["top"] = stats_json(r.top);
  j["front"] = stats_json(r.front);
  j["Psi"] = r.psi;
  return j.dump(2) + "\n";
}

std::string report_table(const EvalReport& r) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(1);
  o << "MOTA    MOTP    Prc    Rcll   ID-Prc ID-Rcll ID-F1  FP     FN     MT  ML  IDSw  Frag  MTBF_s    MTBF_m\n";
  o << std::setw(6) << r.mot.mota << "% " << std::setprecision(3) << std::setw(6) << r.mot.motp << ' '
    << std::setprecision(1) << std::setw(6) << r.mot.precision << ' ' << std::setw(6) << r.mot.recall << ' '
    << std::setw(6) << r.id.idp << ' ' << std::setw(7) << r.id.idr << ' ' << std::setw(6) << r.id.idf1 << ' '
    << std::setw(6) << r.mot.fp << ' ' << std::setw(6) << r.mot.fn << ' ' << std::setw(3) << r.mtml.mt << ' '
    << std::setw(3) << r.mtml.ml << ' ' << std::setw(5) << r.mot.idsw << ' ' << std::setw(5) << r.mot.frag << ' '
    << std::setprecision(3) << std::setw(9) << r.mtbf.mtbf_s << ' ' << std::setw(9) << r.mtbf.mtbf_m << '\n';
  return o.str();
}

std::string report_table(const ComplexityReport& r) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2);
  o << "view    OC      OL      TBO     IBO\n";
  for (const auto& [name, s] : {std::pair{"top", r.top}, std::pair{"front", r.front}})
    o << std::left << std::setw(6) << name << std::right << std::setw(6) << s.oc << "  " << std::setw(6) << s.ol
      << "  " << std::setw(6) << s.tbo << "  " << std::setw(6) << s.ibo << '\n';
  o << "Psi   " << std::setw(6) << r.psi << '\n';
  return o.str();
}

}  // namespace ft3d
