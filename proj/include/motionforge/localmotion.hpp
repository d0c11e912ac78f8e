#pragma once

#include <optional>
#include <span>
#include <vector>

#include "motionforge/types.hpp"

namespace motionforge::localmotion {

/// Piecewise-linear polyline timing; holds the last vertex after its frame.
std::vector<Vec2> densify_local(const LocalTrackSpec& spec, int frame_count);

/// The parent object's boxes: its frame-0 scene box (the canvas the track
/// was drawn on) and its per-frame screen boxes.
struct ParentBoxes {
  BBox2D scene_box0;
  const ScreenBoxTrack* screen = nullptr;
};

/// p_screen = T_camera(T_global(p_scene)).
/// With a parent, the point keeps its coordinates relative to the parent's
/// frame-0 box and rides the parent's screen box. Without one, the point
/// keeps its frame-0 depth and only the camera moves it.
/// Throws OutsideParentError when the start point is outside the parent box.
PointTrack translate_local(const LocalTrackSpec& spec, std::span<const Vec2> dense,
                           const std::optional<ParentBoxes>& parent, const CameraPath& path,
                           const SceneContext& ctx);

}  // namespace motionforge::localmotion
