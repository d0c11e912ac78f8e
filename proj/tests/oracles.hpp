#pragma once

// Independent reference computations. These deliberately avoid the library's
// own helpers so that a shared bug cannot make both sides agree.

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

namespace motionforge::oracle {

/// Pinhole projection written out longhand.
inline Eigen::Vector2d project(const Eigen::Vector3d& x_world, const Eigen::Matrix3d& r, const Eigen::Vector3d& t,
                               double fx, double fy, double cx, double cy) {
  const Eigen::Vector3d c = r * x_world + t;
  return {cx + fx * c.x() / c.z(), cy + fy * c.y() / c.z()};
}

/// Direct O(L*K) DCT-II projection of the residual with the start kept aside.
inline std::vector<Eigen::Vector2d> dct_roundtrip(const std::vector<Eigen::Vector2d>& track, int k_count) {
  const int n = int(track.size());
  const double pi = std::numbers::pi;
  std::vector<Eigen::Vector2d> coeff(std::size_t(k_count), Eigen::Vector2d::Zero());
  for (int k = 1; k < k_count; ++k)
    for (int l = 0; l < n; ++l)
      coeff[k] += (track[l] - track[0]) * std::sqrt(2.0 / n) * std::cos(pi * k * (l + 0.5) / n);
  std::vector<Eigen::Vector2d> rec(std::size_t(n), Eigen::Vector2d::Zero());
  for (int l = 0; l < n; ++l)
    for (int k = 1; k < k_count; ++k) rec[l] += coeff[k] * std::sqrt(2.0 / n) * std::cos(pi * k * (l + 0.5) / n);
  const Eigen::Vector2d shift = rec[0];
  for (auto& p : rec) p = track[0] + (p - shift);
  return rec;
}

/// Centripetal Catmull-Rom in cubic Hermite form with non-uniform knot
/// tangents. Same curve as the Barry-Goldman pyramid, different algebra.
/// Keys at integer times; reflected phantom points at both ends.
inline Eigen::VectorXd catmull_rom(const std::vector<int>& times, const std::vector<Eigen::VectorXd>& pts,
                                   double time) {
  const std::size_t n = pts.size();
  if (time <= times.front()) return pts.front();
  if (time >= times.back()) return pts.back();
  std::size_t i = 0;
  while (!(time >= times[i] && time < times[i + 1])) ++i;
  const Eigen::VectorXd p1 = pts[i], p2 = pts[i + 1];
  const Eigen::VectorXd p0 = i > 0 ? pts[i - 1] : Eigen::VectorXd(2 * p1 - p2);
  const Eigen::VectorXd p3 = i + 2 < n ? pts[i + 2] : Eigen::VectorXd(2 * p2 - p1);
  if ((p2 - p1).norm() == 0.0) return p1;
  auto step = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::max(std::sqrt((b - a).norm()), 1e-12);
  };
  const double d0 = step(p0, p1), d1 = step(p1, p2), d2 = step(p2, p3);
  const Eigen::VectorXd m1 = d1 * ((p1 - p0) / d0 - (p2 - p0) / (d0 + d1) + (p2 - p1) / d1);
  const Eigen::VectorXd m2 = d1 * ((p2 - p1) / d1 - (p3 - p1) / (d1 + d2) + (p3 - p2) / d2);
  const double u = (time - times[i]) / double(times[i + 1] - times[i]);
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * p1 + (u3 - 2 * u2 + u) * m1 + (-2 * u3 + 3 * u2) * p2 + (u3 - u2) * m2;
}

/// HSV (S = V = 1) to 8-bit RGB via the max/min channel construction.
inline std::array<int, 3> hue_to_rgb(double hue_deg) {
  auto channel = [&](double n) {
    const double k = std::fmod(n + hue_deg / 60.0, 6.0);
    return 1.0 - std::max(0.0, std::min({k, 4.0 - k, 1.0}));
  };
  return {int(std::lround(255 * channel(5))), int(std::lround(255 * channel(3))), int(std::lround(255 * channel(1)))};
}

}  // namespace motionforge::oracle
