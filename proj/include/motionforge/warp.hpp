#pragma once

#include <cstdint>
#include <vector>

#include "motionforge/types.hpp"

namespace motionforge::warp {

/// Points at or in front of this camera-space depth are treated as behind the camera.
inline constexpr double kZMin = 1e-6;
inline constexpr int kDefaultPointCount = 100;

struct Projection {
  Vec2 pixel = Vec2::Zero();
  double z = 0.0;
  bool visible = false;
};

/// Inverse pinhole: (z(u-cx)/fx, z(v-cy)/fy, z). Throws DomainError for z <= 0.
Vec3 unproject(const Vec2& pixel, double z, const Intrinsics& k);

/// X_c = R X + t, then pinhole. Behind-camera points are flagged invisible and
/// projected along the ray clamped at kZMin so the pixel stays finite.
Projection project(const Vec3& point, const Extrinsics& e, const Intrinsics& k);

bool in_canvas(const Vec2& pixel, const Intrinsics& k);

/// Moves a frame-0 pixel with known depth into another view. When the view is
/// the reference view itself (identity pose, same intrinsics) the pixel is
/// returned unchanged, bit for bit.
Projection transfer(const Vec2& pixel, double depth, const Intrinsics& k0, const Extrinsics& e, const Intrinsics& k);

/// n distinct static pixels (mask label 0), uniform and reproducible for a
/// given seed. Returns every static pixel when fewer than n exist.
/// Throws NoStaticRegionError when n > 0 and the mask covers the canvas.
std::vector<Vec2> sample_static_points(const SceneContext& ctx, int n, std::uint64_t seed);

/// Depth-based warping of sampled static pixels along the camera path.
std::vector<PointTrack> synthesize_camera_tracks(const SceneContext& ctx, const CameraPath& path, int n,
                                                 std::uint64_t seed);

/// Forward 1-px splat of every source pixel with a nearest-wins z-buffer;
/// unfilled pixels stay black. Throws DimensionMismatchError.
std::vector<RgbImage> render_preview(const RgbImage& image, const SceneContext& ctx, const CameraPath& path);

/// Grayscale stand-in image (near = bright) for previews without a source image.
RgbImage depth_shading(const DepthGrid& depth);

}  // namespace motionforge::warp
