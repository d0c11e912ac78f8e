#include "motionforge/bundle_io.hpp"

#include <cstdio>
#include <fstream>

#include "motionforge/errors.hpp"
#include "motionforge/raster_io.hpp"

namespace motionforge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json track_json(const PointTrack& t, const char* kind) {
  json pos = json::array();
  for (const auto& p : t.positions) pos.push_back({p.x(), p.y()});
  json vis = json::array();
  for (bool v : t.visible) vis.push_back(v);
  return {{"kind", kind}, {"positions", pos}, {"visible", vis}};
}

std::string frame_name(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu.png", i);
  return buf;
}

json load_json(const fs::path& path) {
  const Bytes bytes = read_file(path);
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

PointTrack track_from_json(const json& j) {
  PointTrack t;
  for (const auto& p : j.at("positions")) t.positions.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  for (const auto& v : j.at("visible")) t.visible.push_back(v.get<bool>());
  return t;
}

}  // namespace

json tracks_to_json(const SignalBundle& b) {
  json arr = json::array();
  for (const auto& t : b.camera_tracks) arr.push_back(track_json(t, "camera"));
  for (const auto& t : b.local_tracks) arr.push_back(track_json(t, "local"));
  return arr;
}

json boxes_to_json(const SignalBundle& b) {
  json arr = json::array();
  for (const auto& obj : b.screen_boxes) {
    json boxes = json::array();
    for (const auto& box : obj.screen.boxes) boxes.push_back({{"cx", box.cx}, {"cy", box.cy}, {"w", box.w}, {"h", box.h}});
    arr.push_back({{"id", obj.object_id}, {"boxes", boxes}, {"depth", obj.screen.z}});
  }
  return arr;
}

json coeffs_to_json(const SignalBundle& b) {
  json arr = json::array();
  for (std::size_t i = 0; i < b.traj_coeffs.size(); ++i) {
    json slots = json::array();
    for (const auto& s : b.traj_coeffs[i].slots) slots.push_back({s.x(), s.y()});
    const char* kind = i < b.camera_tracks.size() ? "camera" : "local";
    arr.push_back({{"track_index", i}, {"kind", kind}, {"K", b.traj_coeffs[i].k()}, {"coeffs", slots}});
  }
  return arr;
}

json manifest_json(const SignalBundle& b) {
  return {{"frame_count", b.frame_count},
          {"fps", b.fps},
          {"canvas", {{"width", b.width}, {"height", b.height}}},
          {"files",
           {{"tracks", "tracks.json"},
            {"boxes", "boxes.json"},
            {"coeffs", "coeffs.json"},
            {"bbox_frames_dir", "bbox_frames"}}},
          {"track_count", b.camera_tracks.size() + b.local_tracks.size()},
          {"object_count", b.screen_boxes.size()},
          {"warnings", b.warnings},
          {"versions", {{"format", kBundleFormatVersion}}}};
}

json camera_path_to_json(const CameraPath& path) {
  json frames = json::array();
  for (const auto& f : path.frames) {
    json rot = json::array();
    for (int i = 0; i < 9; ++i) rot.push_back(f.extrinsics.rotation(i / 3, i % 3));
    const auto& t = f.extrinsics.translation;
    const auto& k = f.intrinsics;
    frames.push_back({{"rotation", rot},
                      {"translation", {t.x(), t.y(), t.z()}},
                      {"intrinsics", {{"fx", k.fx}, {"fy", k.fy}, {"cx", k.cx}, {"cy", k.cy}}}});
  }
  return {{"frames", frames}};
}

json write_bundle(const SignalBundle& b, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const fs::path frames_dir = dir / "bbox_frames";
  fs::remove_all(frames_dir, ec);
  fs::create_directories(frames_dir, ec);
  if (ec) throw IoError("cannot create " + frames_dir.string() + ": " + ec.message());

  const json manifest = manifest_json(b);
  write_text_file(dir / "tracks.json", tracks_to_json(b).dump() + "\n");
  write_text_file(dir / "boxes.json", boxes_to_json(b).dump() + "\n");
  write_text_file(dir / "coeffs.json", coeffs_to_json(b).dump() + "\n");
  for (std::size_t i = 0; i < b.bbox_frames.size(); ++i) write_png_rgb(frames_dir / frame_name(i), b.bbox_frames[i]);
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

SignalBundle read_bundle(const fs::path& dir, bool load_frames) {
  SignalBundle b;
  try {
    const json manifest = load_json(dir / "manifest.json");
    b.frame_count = manifest.at("frame_count").get<int>();
    b.fps = manifest.at("fps").get<int>();
    b.width = manifest.at("canvas").at("width").get<int>();
    b.height = manifest.at("canvas").at("height").get<int>();
    if (manifest.contains("warnings")) b.warnings = manifest.at("warnings").get<std::vector<std::string>>();
    const json& files = manifest.at("files");

    for (const auto& t : load_json(dir / files.at("tracks").get<std::string>())) {
      const auto kind = t.at("kind").get<std::string>();
      (kind == "camera" ? b.camera_tracks : b.local_tracks).push_back(track_from_json(t));
    }
    for (const auto& o : load_json(dir / files.at("boxes").get<std::string>())) {
      ObjectSignal sig;
      sig.object_id = o.at("id").get<int>();
      for (const auto& box : o.at("boxes"))
        sig.screen.boxes.push_back(
            {box.at("cx").get<double>(), box.at("cy").get<double>(), box.at("w").get<double>(), box.at("h").get<double>()});
      sig.screen.z = o.at("depth").get<std::vector<double>>();
      b.screen_boxes.push_back(std::move(sig));
    }
    for (const auto& c : load_json(dir / files.at("coeffs").get<std::string>())) {
      TrajCoeffs tc;
      for (const auto& s : c.at("coeffs")) tc.slots.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
      b.traj_coeffs.push_back(std::move(tc));
    }
    if (load_frames) {
      const fs::path frames_dir = dir / files.at("bbox_frames_dir").get<std::string>();
      for (int i = 0; i < b.frame_count; ++i) b.bbox_frames.push_back(read_png_rgb(frames_dir / frame_name(std::size_t(i))));
    }
  } catch (const json::exception& e) {
    throw FormatError(dir.string() + ": malformed bundle (" + e.what() + ")");
  }
  return b;
}

}  // namespace motionforge
