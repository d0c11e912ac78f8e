#pragma once

#include <span>
#include <string>
#include <vector>

#include "motionforge/types.hpp"

namespace motionforge::objmotion {

/// Boxes on the frame-0 canvas plus the scene depth assigned to each centre.
struct SceneBoxTrack {
  std::vector<BBox2D> boxes;
  std::vector<double> depth;
};

/// Per-channel centripetal Catmull-Rom through the key boxes, one box per
/// frame, exact at key frames.
std::vector<BBox2D> interpolate_boxes(std::span<const KeyBox> key_boxes, int frame_count);

/// Mean depth under (mask == object_id) ∩ box. Falls back to the whole box
/// interior when the label has no pixels there; `used_fallback` reports it.
/// Throws EmptyMaskError when the box covers no pixel at all.
double box_depth(const BBox2D& box, int object_id, const SceneContext& ctx, bool* used_fallback = nullptr);

/// Depth per frame. d_0 comes from the mask; later frames follow the
/// object's depth mode:
///   MaskMean        constant d_0
///   ReferencePoint  depth under the reference pixels, linear in frame index
///                   between given frames, held past the ends; a reference at
///                   frame 0 overrides the mask mean
///   Perspective     d_0 * h_0 / h_l
/// A mask fallback appends a message to `warnings` when given.
std::vector<double> assign_depths(std::span<const BBox2D> boxes, const ObjectSpec& spec, const SceneContext& ctx,
                                  std::vector<std::string>* warnings = nullptr);

/// Screen-space boxes b_screen = T_camera(b_scene): the centre is lifted to
/// its depth, moved by the frame's extrinsics and reprojected; the size
/// scales by (d / z) * (f_l / f_0). Throws BehindCameraError.
ScreenBoxTrack project_boxes(const SceneBoxTrack& scene, const CameraPath& path, const Intrinsics& intrinsics0);

}  // namespace motionforge::objmotion
