#include "motionforge/warp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "motionforge/errors.hpp"
#include "motionforge/kernels.hpp"

namespace motionforge::warp {

Vec3 unproject(const Vec2& pixel, double z, const Intrinsics& k) {
  if (!(z > 0.0)) throw DomainError("unproject: depth must be > 0");
  return {z * (pixel.x() - k.cx) / k.fx, z * (pixel.y() - k.cy) / k.fy, z};
}

bool in_canvas(const Vec2& pixel, const Intrinsics& k) {
  return pixel.x() >= 0.0 && pixel.x() < k.width && pixel.y() >= 0.0 && pixel.y() < k.height;
}

Projection project(const Vec3& point, const Extrinsics& e, const Intrinsics& k) {
  const Vec3 xc = e.apply(point);
  Projection p;
  p.z = xc.z();
  const double z = std::max(xc.z(), kZMin);
  p.pixel = {k.cx + k.fx * xc.x() / z, k.cy + k.fy * xc.y() / z};
  p.visible = xc.z() > kZMin && in_canvas(p.pixel, k);
  return p;
}

Projection transfer(const Vec2& pixel, double depth, const Intrinsics& k0, const Extrinsics& e, const Intrinsics& k) {
  if (e.is_exact_identity() && k == k0) return {pixel, depth, depth > kZMin && in_canvas(pixel, k)};
  return project(unproject(pixel, depth, k0), e, k);
}

namespace {

// Unbiased draw from [0, bound) on top of the fully specified mt19937_64
// stream, so samples are identical across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace

std::vector<Vec2> sample_static_points(const SceneContext& ctx, int n, std::uint64_t seed) {
  if (n < 0) throw ValidationError("point count must be >= 0");
  if (n == 0) return {};
  std::vector<std::uint32_t> candidates;
  for (int y = 0; y < ctx.height; ++y)
    for (int x = 0; x < ctx.width; ++x)
      if (ctx.moving_mask.at(x, y) == 0) candidates.push_back(std::uint32_t(y * ctx.width + x));
  if (candidates.empty()) throw NoStaticRegionError("no static pixels: the object mask covers the whole canvas");

  std::mt19937_64 rng(seed);
  const std::size_t count = std::min(std::size_t(n), candidates.size());
  std::vector<Vec2> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + std::size_t(bounded(rng, candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
    const std::uint32_t idx = candidates[i];
    out.emplace_back(double(idx % std::uint32_t(ctx.width)), double(idx / std::uint32_t(ctx.width)));
  }
  return out;
}

std::vector<PointTrack> synthesize_camera_tracks(const SceneContext& ctx, const CameraPath& path, int n,
                                                 std::uint64_t seed) {
  if (path.size() < 2) throw ValidationError("camera path must have at least 2 frames");
  const auto pixels = sample_static_points(ctx, n, seed);
  std::vector<double> depths;
  depths.reserve(pixels.size());
  for (const auto& p : pixels) depths.push_back(ctx.depth.at(int(p.x()), int(p.y())));
  return kernels::omp::warp_points(pixels, depths, ctx.intrinsics0, path);
}

std::vector<RgbImage> render_preview(const RgbImage& image, const SceneContext& ctx, const CameraPath& path) {
  if (image.width != ctx.width || image.height != ctx.height)
    throw DimensionMismatchError("dimension mismatch: preview image does not match the depth raster");
  return kernels::omp::splat_frames(image, ctx.depth, ctx.intrinsics0, path);
}

RgbImage depth_shading(const DepthGrid& depth) {
  RgbImage img(depth.width, depth.height);
  if (depth.data.empty()) return img;
  const auto [lo, hi] = std::minmax_element(depth.data.begin(), depth.data.end());
  const double span = double(*hi) - double(*lo);
  for (int y = 0; y < depth.height; ++y) {
    for (int x = 0; x < depth.width; ++x) {
      const double t = span > 0.0 ? (double(*hi) - depth.at(x, y)) / span : 1.0;
      const auto g = std::uint8_t(std::lround(40.0 + 215.0 * t));
      std::uint8_t* px = img.pixel(x, y);
      px[0] = px[1] = px[2] = g;
    }
  }
  return img;
}

}  // namespace motionforge::warp
