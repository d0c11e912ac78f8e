#pragma once

#include <cstdint>
#include <optional>

#include "motionforge/codec.hpp"
#include "motionforge/objmotion.hpp"
#include "motionforge/types.hpp"
#include "motionforge/warp.hpp"

namespace motionforge {

struct TranslateOptions {
  int points = warp::kDefaultPointCount;
  std::uint64_t seed = 0;
  int coeff_count = codec::kDefaultCoeffCount;
};

/// Everything one translation produces: the camera path it used, the
/// scene-space boxes with their depths, and the screen-space bundle.
struct Translation {
  CameraPath path;
  std::vector<objmotion::SceneBoxTrack> scene_boxes;
  SignalBundle bundle;
};

/// Scene context for a design: canvas must match the depth raster, intrinsics
/// come from the design (or the default for its canvas).
SceneContext scene_for_design(const MotionDesign& design, DepthGrid depth, std::optional<LabelGrid> mask = std::nullopt);

/// True when every frame is the exact frame-0 view (identity pose, unchanged
/// intrinsics). Such a path moves no pixel, so translate emits no camera tracks.
bool is_static_path(const CameraPath& path);

/// Scene-space motion design -> screen-space signals.
Translation translate(const MotionDesign& design, const SceneContext& ctx, const TranslateOptions& options = {});

/// Signals for an already-built camera path (used when re-anchoring chunks).
Translation translate_with_path(const MotionDesign& design, const SceneContext& ctx, CameraPath path,
                                const TranslateOptions& options = {});

}  // namespace motionforge
