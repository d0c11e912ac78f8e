#pragma once

#include <filesystem>
#include <json.hpp>

#include "motionforge/types.hpp"

namespace motionforge {

inline constexpr int kBundleFormatVersion = 1;

nlohmann::json tracks_to_json(const SignalBundle& bundle);
nlohmann::json boxes_to_json(const SignalBundle& bundle);
nlohmann::json coeffs_to_json(const SignalBundle& bundle);
nlohmann::json manifest_json(const SignalBundle& bundle);
nlohmann::json camera_path_to_json(const CameraPath& path);

/// Writes manifest.json, tracks.json, boxes.json, coeffs.json and
/// bbox_frames/%04d.png into `dir` (created if needed). Identical bundles
/// give byte-identical files. Returns the manifest. Throws IoError.
nlohmann::json write_bundle(const SignalBundle& bundle, const std::filesystem::path& dir);

/// Reads a bundle directory back. Raster frames are loaded only on request.
SignalBundle read_bundle(const std::filesystem::path& dir, bool load_frames = false);

}  // namespace motionforge
