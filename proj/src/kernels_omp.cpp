#include <omp.h>

#include <cmath>
#include <limits>

#include "motionforge/codec.hpp"
#include "motionforge/errors.hpp"
#include "motionforge/kernels.hpp"
#include "motionforge/warp.hpp"

namespace motionforge::kernels {

void set_thread_limit(int threads) { omp_set_num_threads(threads > 0 ? threads : omp_get_num_procs()); }

int max_threads() { return omp_get_max_threads(); }

namespace omp {

namespace {

bool is_reference_view(const CameraFrame& f, const Intrinsics& k0) {
  return f.extrinsics.is_exact_identity() && f.intrinsics == k0;
}

}  // namespace

std::vector<PointTrack> warp_points(std::span<const Vec2> pixels, std::span<const double> depths,
                                    const Intrinsics& k0, const CameraPath& path) {
  const auto n = std::ptrdiff_t(pixels.size());
  const std::size_t frames = path.size();
  std::vector<PointTrack> tracks(pixels.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Vec2& px = pixels[std::size_t(i)];
    const double d = depths[std::size_t(i)];
    const Vec3 world = warp::unproject(px, d, k0);
    auto& t = tracks[std::size_t(i)];
    t.positions.resize(frames);
    t.visible.resize(frames);
    for (std::size_t l = 0; l < frames; ++l) {
      if (is_reference_view(path[l], k0)) {
        t.positions[l] = px;
        t.visible[l] = d > warp::kZMin && warp::in_canvas(px, k0);
        continue;
      }
      const auto p = warp::project(world, path[l].extrinsics, path[l].intrinsics);
      t.positions[l] = p.pixel;
      t.visible[l] = p.visible;
    }
  }
  return tracks;
}

std::vector<RgbImage> splat_frames(const RgbImage& image, const DepthGrid& depth, const Intrinsics& k0,
                                   const CameraPath& path) {
  const int w = image.width, h = image.height;
  const std::size_t count = std::size_t(w) * std::size_t(h);
  std::vector<Vec3> world(count);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      world[std::size_t(y) * std::size_t(w) + std::size_t(x)] = warp::unproject(Vec2(x, y), depth.at(x, y), k0);

  std::vector<RgbImage> frames(path.size());
  const auto nframes = std::ptrdiff_t(path.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t l = 0; l < nframes; ++l) {
    const CameraFrame& cam = path[std::size_t(l)];
    const bool reference = is_reference_view(cam, k0);
    RgbImage out(w, h);
    std::vector<double> zbuf(count, std::numeric_limits<double>::infinity());
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t src = std::size_t(y) * std::size_t(w) + std::size_t(x);
        Vec2 pixel;
        double z;
        if (reference) {
          pixel = Vec2(x, y);
          z = depth.at(x, y);
        } else {
          const auto p = warp::project(world[src], cam.extrinsics, cam.intrinsics);
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
    frames[std::size_t(l)] = std::move(out);
  }
  return frames;
}

std::vector<RgbImage> rasterize_frames(std::span<const ScreenBoxTrack> tracks, int frame_count, int width,
                                       int height) {
  std::vector<std::array<std::uint8_t, 3>> colors;
  for (std::size_t obj = 0; obj < tracks.size(); ++obj) colors.push_back(codec::palette_color(int(obj)));

  std::vector<RgbImage> frames(static_cast<std::size_t>(frame_count));
#pragma omp parallel for schedule(static)
  for (int l = 0; l < frame_count; ++l) {
    RgbImage out(width, height);
    for (std::size_t obj = 0; obj < tracks.size(); ++obj) {
      const auto r = codec::box_pixels(tracks[obj].boxes[std::size_t(l)], width, height);
      if (r.empty()) continue;
      for (int y = r.y0; y < r.y1; ++y) {
        std::uint8_t* px = out.pixel(r.x0, y);
        for (int x = r.x0; x < r.x1; ++x, px += 3) std::copy_n(colors[obj].data(), 3, px);
      }
    }
    frames[std::size_t(l)] = std::move(out);
  }
  return frames;
}

std::vector<TrajCoeffs> encode_tracks(std::span<const PointTrack> tracks, int coeff_count) {
  if (tracks.empty()) return {};
  const int length = int(tracks.front().size());
  for (const auto& t : tracks)
    if (int(t.size()) != length) throw LengthMismatchError("encode_tracks: tracks differ in length");
  if (length < 2) throw DomainError("dct_encode: track needs at least 2 frames");
  if (coeff_count < 1) throw DomainError("dct_encode: K must be >= 1");
  if (coeff_count > length) throw DomainError("dct_encode: K exceeds the track length");

  std::vector<double> basis(std::size_t(coeff_count) * std::size_t(length), 0.0);
  for (int k = 1; k < coeff_count; ++k)
    for (int l = 0; l < length; ++l) basis[std::size_t(k) * std::size_t(length) + std::size_t(l)] = codec::dct_basis(k, l, length);

  std::vector<TrajCoeffs> out(tracks.size());
  const auto n = std::ptrdiff_t(tracks.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& pos = tracks[std::size_t(i)].positions;
    auto& slots = out[std::size_t(i)].slots;
    slots.assign(std::size_t(coeff_count), Vec2::Zero());
    slots[0] = pos[0];
    for (int k = 1; k < coeff_count; ++k) {
      const double* row = &basis[std::size_t(k) * std::size_t(length)];
      Vec2 acc = Vec2::Zero();
      for (int l = 0; l < length; ++l) acc += (pos[std::size_t(l)] - pos[0]) * row[l];
      slots[std::size_t(k)] = acc;
    }
  }
  return out;
}

}  // namespace omp
}  // namespace motionforge::kernels
