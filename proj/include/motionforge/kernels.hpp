#pragma once

// Data-parallel inner loops of the pipeline. Every kernel exists twice:
// `serial` is the plain loop nest kept as the reference, `omp` is the
// OpenMP version the library uses. Both produce bit-identical results.

#include <span>
#include <vector>

#include "motionforge/types.hpp"

namespace motionforge::kernels {

namespace serial {

std::vector<PointTrack> warp_points(std::span<const Vec2> pixels, std::span<const double> depths,
                                    const Intrinsics& k0, const CameraPath& path);
std::vector<RgbImage> splat_frames(const RgbImage& image, const DepthGrid& depth, const Intrinsics& k0,
                                   const CameraPath& path);
std::vector<RgbImage> rasterize_frames(std::span<const ScreenBoxTrack> tracks, int frame_count, int width,
                                       int height);
std::vector<TrajCoeffs> encode_tracks(std::span<const PointTrack> tracks, int coeff_count);

}  // namespace serial

namespace omp {

std::vector<PointTrack> warp_points(std::span<const Vec2> pixels, std::span<const double> depths,
                                    const Intrinsics& k0, const CameraPath& path);
std::vector<RgbImage> splat_frames(const RgbImage& image, const DepthGrid& depth, const Intrinsics& k0,
                                   const CameraPath& path);
std::vector<RgbImage> rasterize_frames(std::span<const ScreenBoxTrack> tracks, int frame_count, int width,
                                       int height);
std::vector<TrajCoeffs> encode_tracks(std::span<const PointTrack> tracks, int coeff_count);

}  // namespace omp

/// Caps OpenMP parallelism; 0 restores the runtime default.
void set_thread_limit(int threads);
int max_threads();

}  // namespace motionforge::kernels
