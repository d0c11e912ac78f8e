#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace motionforge {

/// Centripetal (alpha = 0.5) Catmull-Rom curve through timed control points.
///
/// Control points sit at strictly increasing integer key times. Between two
/// keys the frame index maps linearly onto that segment's knot interval.
/// The ends are clamped with reflected phantom points (P[-1] = 2P[0] - P[1]),
/// which makes two-key curves straight lines and reproduces linear data.
class CatmullRom {
 public:
  CatmullRom(std::span<const int> times, std::vector<Eigen::VectorXd> points);

  /// Value at a (real) time inside [times.front(), times.back()]; clamped outside.
  Eigen::VectorXd eval(double time) const;

  /// One value per integer frame 0..frame_count-1. Key frames return their
  /// control point bit-exactly.
  std::vector<Eigen::VectorXd> sample_frames(int frame_count) const;

 private:
  std::vector<int> times_;
  std::vector<Eigen::VectorXd> points_;
};

/// Scalar convenience: one channel, one value per frame.
std::vector<double> catmull_rom_scalar(std::span<const int> times, std::span<const double> values, int frame_count);

}  // namespace motionforge
