#pragma once

#include <span>
#include <utility>

#include "motionforge/types.hpp"

namespace motionforge::camera {

// Sign conventions for the base patterns (camera motion, y down):
//   trucking +  camera moves right      pan  +  camera yaws right
//   pedestal +  camera moves up         tilt +  camera pitches up
//   dolly    +  camera moves forward    roll +  camera rolls clockwise
//   zoom     +  focal length grows      orbit + camera circles right around
//                                               the pivot (0, 0, radius)
//   circle      camera centre follows radius*(sin t, cos t - 1, 0), fixed orientation
// Rotational patterns describe the camera's orientation, so the world-to-camera
// rotation stored in Extrinsics is its transpose.

/// Pose of a single pattern at normalized progress s in [0, 1].
/// Throws DomainError for zoom factors <= 0 or orbit/circle radius <= 0.
std::pair<Extrinsics, Intrinsics> pattern_pose(const PatternSpec& spec, double s, const Intrinsics& intrinsics0);

/// Mixes patterns at constant speed, s = l / (L - 1):
/// E_l = E_orbit(s) ∘ E_rot(s) ∘ E_trans(s), with E_rot = pan · tilt · roll
/// and E_trans built from the summed camera-centre displacements of
/// trucking, pedestal, dolly and circle. Zoom factors multiply.
CameraPath mix_patterns(std::span<const PatternSpec> specs, int frame_count, const Intrinsics& intrinsics0);

/// Interpolated keyframe path: centripetal Catmull-Rom over camera centres,
/// shortest-arc slerp for rotation, linear focal scale. Passes through
/// every key exactly.
CameraPath keyframe_path(std::span<const CameraKeyframe> keys, int frame_count, const Intrinsics& intrinsics0);

/// Dispatches on the design's camera specification.
CameraPath build_camera_path(const MotionDesign& design, const Intrinsics& intrinsics0);

}  // namespace motionforge::camera
