// Reference loop nests: the same algorithms as the OpenMP kernels with the
// parallel loops run in order. Tests compare the two element for element and
// the benchmark measures the difference.

#include <algorithm>
#include <cmath>
#include <limits>

#include "motionforge/codec.hpp"
#include "motionforge/errors.hpp"
#include "motionforge/kernels.hpp"
#include "motionforge/warp.hpp"

namespace motionforge::kernels::serial {

namespace {

bool is_reference_view(const CameraFrame& f, const Intrinsics& k0) {
  return f.extrinsics.is_exact_identity() && f.intrinsics == k0;
}

}  // namespace

std::vector<PointTrack> warp_points(std::span<const Vec2> pixels, std::span<const double> depths,
                                    const Intrinsics& k0, const CameraPath& path) {
  std::vector<PointTrack> tracks(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    const Vec3 world = warp::unproject(pixels[i], depths[i], k0);
    auto& t = tracks[i];
    for (std::size_t l = 0; l < path.size(); ++l) {
      if (is_reference_view(path[l], k0)) {
        t.positions.push_back(pixels[i]);
        t.visible.push_back(depths[i] > warp::kZMin && warp::in_canvas(pixels[i], k0));
        continue;
      }
      const auto p = warp::project(world, path[l].extrinsics, path[l].intrinsics);
      t.positions.push_back(p.pixel);
      t.visible.push_back(p.visible);
    }
  }
  return tracks;
}

std::vector<RgbImage> splat_frames(const RgbImage& image, const DepthGrid& depth, const Intrinsics& k0,
                                   const CameraPath& path) {
  const int w = image.width, h = image.height;
  std::vector<Vec3> world;
  world.reserve(std::size_t(w) * std::size_t(h));
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) world.push_back(warp::unproject(Vec2(x, y), depth.at(x, y), k0));

  std::vector<RgbImage> frames;
  for (std::size_t l = 0; l < path.size(); ++l) {
    const bool reference = is_reference_view(path[l], k0);
    RgbImage out(w, h);
    std::vector<double> zbuf(world.size(), std::numeric_limits<double>::infinity());
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t src = std::size_t(y) * std::size_t(w) + std::size_t(x);
        Vec2 pixel(x, y);
        double z = depth.at(x, y);
        if (!reference) {
          const auto p = warp::project(world[src], path[l].extrinsics, path[l].intrinsics);
          pixel = p.pixel;
          z = p.z;
        }
        if (!(z > warp::kZMin)) continue;
        const double tx = std::floor(pixel.x() + 0.5);
        const double ty = std::floor(pixel.y() + 0.5);
        if (tx < 0 || ty < 0 || tx >= w || ty >= h) continue;
        const std::size_t dst = std::size_t(ty) * std::size_t(w) + std::size_t(tx);
        if (z < zbuf[dst]) {
          zbuf[dst] = z;
          std::copy_n(&image.data[src * 3], 3, &out.data[dst * 3]);
        }
      }
    }
    frames.push_back(std::move(out));
  }
  return frames;
}

std::vector<RgbImage> rasterize_frames(std::span<const ScreenBoxTrack> tracks, int frame_count, int width,
                                       int height) {
  std::vector<RgbImage> frames;
  for (int l = 0; l < frame_count; ++l) {
    RgbImage out(width, height);
    for (std::size_t obj = 0; obj < tracks.size(); ++obj) {
      const auto r = codec::box_pixels(tracks[obj].boxes[std::size_t(l)], width, height);
      const auto c = codec::palette_color(int(obj));
      for (int y = r.y0; y < r.y1; ++y)
        for (int x = r.x0; x < r.x1; ++x) std::copy_n(c.data(), 3, out.pixel(x, y));
    }
    frames.push_back(std::move(out));
  }
  return frames;
}

std::vector<TrajCoeffs> encode_tracks(std::span<const PointTrack> tracks, int coeff_count) {
  for (const auto& t : tracks)
    if (t.size() != tracks.front().size()) throw LengthMismatchError("encode_tracks: tracks differ in length");
  std::vector<TrajCoeffs> out;
  if (tracks.empty()) return out;
  const int length = int(tracks.front().size());
  if (length < 2) throw DomainError("dct_encode: track needs at least 2 frames");
  if (coeff_count < 1) throw DomainError("dct_encode: K must be >= 1");
  if (coeff_count > length) throw DomainError("dct_encode: K exceeds the track length");

  std::vector<double> basis(std::size_t(coeff_count) * std::size_t(length), 0.0);
  for (int k = 1; k < coeff_count; ++k)
    for (int l = 0; l < length; ++l) basis[std::size_t(k) * std::size_t(length) + std::size_t(l)] = codec::dct_basis(k, l, length);

  for (const auto& t : tracks) {
    TrajCoeffs c;
    c.slots.assign(std::size_t(coeff_count), Vec2::Zero());
    c.slots[0] = t.positions[0];
    for (int k = 1; k < coeff_count; ++k) {
      Vec2 acc = Vec2::Zero();
      for (int l = 0; l < length; ++l)
        acc += (t.positions[std::size_t(l)] - t.positions[0]) * basis[std::size_t(k) * std::size_t(length) + std::size_t(l)];
      c.slots[std::size_t(k)] = acc;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace motionforge::kernels::serial
