#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "motionforge/types.hpp"

namespace motionforge::codec {

inline constexpr int kDefaultCoeffCount = 10;

/// Orthonormal DCT-II basis value sqrt(2/L) cos(pi k (2l+1) / 2L), k >= 1.
double dct_basis(int k, int l, int length);

/// Slot 0 := p_0 verbatim; slots 1..K-1 := DCT-II of the residual p_l - p_0.
/// Throws DomainError when K > L, K < 1 or L < 2.
TrajCoeffs dct_encode(std::span<const Vec2> track, int coeff_count = kDefaultCoeffCount);

/// Inverse of dct_encode up to truncation; the output starts at slot 0 exactly.
std::vector<Vec2> dct_decode(const TrajCoeffs& coeffs, int length);

/// Golden-ratio hue walk, full saturation and value.
std::array<std::uint8_t, 3> palette_color(int object_index);

/// Integer pixel range covered by a box under the half-open fill rule
/// [cx - w/2, cx + w/2) x [cy - h/2, cy + h/2), clipped to the canvas.
/// x1/y1 are exclusive; an empty range has x0 >= x1 or y0 >= y1.
struct PixelRect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool empty() const { return x0 >= x1 || y0 >= y1; }
};
PixelRect box_pixels(const BBox2D& box, int width, int height);

/// One RGB frame per time step; later objects paint over earlier ones.
std::vector<RgbImage> rasterize_boxes(std::span<const ScreenBoxTrack> tracks, int frame_count, int width,
                                      int height);

/// dct_encode applied to every track.
std::vector<TrajCoeffs> encode_tracks(std::span<const PointTrack> tracks, int coeff_count = kDefaultCoeffCount);

}  // namespace motionforge::codec
