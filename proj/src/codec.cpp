#include "motionforge/codec.hpp"

#include <cmath>
#include <numbers>

#include "motionforge/errors.hpp"
#include "motionforge/kernels.hpp"

namespace motionforge::codec {

double dct_basis(int k, int l, int length) {
  return std::sqrt(2.0 / length) * std::cos(std::numbers::pi * k * (2.0 * l + 1.0) / (2.0 * length));
}

TrajCoeffs dct_encode(std::span<const Vec2> track, int coeff_count) {
  const int length = int(track.size());
  if (length < 2) throw DomainError("dct_encode: track needs at least 2 frames");
  if (coeff_count < 1) throw DomainError("dct_encode: K must be >= 1");
  if (coeff_count > length) throw DomainError("dct_encode: K exceeds the track length");

  TrajCoeffs out;
  out.slots.assign(std::size_t(coeff_count), Vec2::Zero());
  out.slots[0] = track[0];
  for (int k = 1; k < coeff_count; ++k) {
    Vec2 acc = Vec2::Zero();
    for (int l = 0; l < length; ++l) acc += (track[std::size_t(l)] - track[0]) * dct_basis(k, l, length);
    out.slots[std::size_t(k)] = acc;
  }
  return out;
}

std::vector<Vec2> dct_decode(const TrajCoeffs& coeffs, int length) {
  if (length < 2) throw DomainError("dct_decode: length must be >= 2");
  if (coeffs.slots.empty()) throw DomainError("dct_decode: no coefficients");
  std::vector<Vec2> residual(std::size_t(length), Vec2::Zero());
  for (int l = 0; l < length; ++l)
    for (std::size_t k = 1; k < coeffs.slots.size(); ++k)
      residual[std::size_t(l)] += coeffs.slots[k] * dct_basis(int(k), l, length);

  std::vector<Vec2> out(static_cast<std::size_t>(length));
  for (int l = 0; l < length; ++l) out[std::size_t(l)] = coeffs.slots[0] + (residual[std::size_t(l)] - residual[0]);
  return out;
}

std::array<std::uint8_t, 3> palette_color(int object_index) {
  constexpr double kGolden = 0.618033988749895;
  const double turn = (object_index + 1) * kGolden;
  const double hue = (turn - std::floor(turn)) * 360.0;

  // HSV -> RGB with S = V = 1.
  const double h6 = hue / 60.0;
  const int sector = int(std::floor(h6)) % 6;
  const double f = h6 - std::floor(h6);
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = 1; g = f; b = 0; break;
    case 1: r = 1 - f; g = 1; b = 0; break;
    case 2: r = 0; g = 1; b = f; break;
    case 3: r = 0; g = 1 - f; b = 1; break;
    case 4: r = f; g = 0; b = 1; break;
    default: r = 1; g = 0; b = 1 - f; break;
  }
  auto to_byte = [](double v) { return std::uint8_t(std::lround(v * 255.0)); };
  return {to_byte(r), to_byte(g), to_byte(b)};
}

PixelRect box_pixels(const BBox2D& box, int width, int height) {
  // Integer x satisfies lo <= x < hi  <=>  ceil(lo) <= x <= ceil(hi) - 1.
  auto first = [](double lo) { return std::ceil(lo); };
  const double x0 = std::max(first(box.cx - 0.5 * box.w), 0.0);
  const double x1 = std::min(std::ceil(box.cx + 0.5 * box.w), double(width));
  const double y0 = std::max(first(box.cy - 0.5 * box.h), 0.0);
  const double y1 = std::min(std::ceil(box.cy + 0.5 * box.h), double(height));
  PixelRect r;
  if (!(x0 < x1) || !(y0 < y1)) return r;
  r.x0 = int(x0);
  r.x1 = int(x1);
  r.y0 = int(y0);
  r.y1 = int(y1);
  return r;
}

std::vector<RgbImage> rasterize_boxes(std::span<const ScreenBoxTrack> tracks, int frame_count, int width,
                                      int height) {
  if (width <= 0 || height <= 0) throw ValidationError("rasterize: canvas size must be positive");
  for (const auto& t : tracks)
    if (int(t.boxes.size()) != frame_count) throw LengthMismatchError("rasterize: box track length != frame count");
  return kernels::omp::rasterize_frames(tracks, frame_count, width, height);
}

std::vector<TrajCoeffs> encode_tracks(std::span<const PointTrack> tracks, int coeff_count) {
  return kernels::omp::encode_tracks(tracks, coeff_count);
}

}  // namespace motionforge::codec
