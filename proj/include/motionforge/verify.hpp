#pragma once

#include <json.hpp>
#include <span>
#include <vector>

#include "motionforge/pipeline.hpp"

namespace motionforge::verify {

inline constexpr int kMinCorrespondences = 6;

struct PoseEstimate {
  Extrinsics pose;
  double reprojection_rms = 0.0;  // pixels
};

/// Linear DLT resection from 3D-2D correspondences: pixels are normalized by
/// K^{-1}, the 3x4 projection is the least-squares null vector of the 2n x 12
/// system, R is the nearest rotation to its left 3x3 block and t is scaled by
/// the same factor. Throws DegenerateConfigurationError for n < 6 or a
/// rank-deficient system (e.g. coplanar points).
PoseEstimate recover_pose(std::span<const Vec3> world_points, std::span<const Vec2> pixels, const Intrinsics& k);

struct CameraErrors {
  double rot_err = 0.0;    // sum of geodesic angles, radians
  double trans_err = 0.0;  // sum of translation distances after max-norm normalization
  double cam_mc = 0.0;     // sum of Frobenius norms of the [R|t] differences
};

/// Translation sequences are divided by their own largest norm; sequences
/// whose largest norm is below kStaticTranslationNorm count as static and
/// are left unscaled. Throws LengthMismatchError.
inline constexpr double kStaticTranslationNorm = 1e-9;
CameraErrors camera_errors(const CameraPath& gt, std::span<const Extrinsics> est);

/// Mean Euclidean pixel distance between two equally long tracks.
double obj_mc(std::span<const Vec2> generated, std::span<const Vec2> target);

struct Report {
  CameraErrors camera;
  double obj_mc = 0.0;
  double reproj_rms = 0.0;
  std::vector<Extrinsics> recovered;
};

/// Round trip: recover every frame's pose from the bundle's camera tracks
/// (world points from frame-0 pixels and the depth raster), compare against
/// the design's camera path, and compare the bundle's box centres and local
/// tracks against a fresh translation.
Report verify_bundle(const SignalBundle& bundle, const MotionDesign& design, const SceneContext& ctx);

nlohmann::json report_to_json(const Report& report);

}  // namespace motionforge::verify
