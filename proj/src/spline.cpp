#include "motionforge/spline.hpp"

#include <algorithm>
#include <cmath>

#include "motionforge/errors.hpp"

namespace motionforge {

namespace {

constexpr double kAlpha = 0.5;
constexpr double kMinKnotStep = 1e-12;

double knot_step(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::max(std::pow((b - a).norm(), kAlpha), kMinKnotStep);
}

// Barry-Goldman pyramid for one segment P1 -> P2 at local u in [0, 1].
Eigen::VectorXd segment(const Eigen::VectorXd& p0, const Eigen::VectorXd& p1, const Eigen::VectorXd& p2,
                        const Eigen::VectorXd& p3, double u) {
  if ((p2 - p1).norm() == 0.0) return p1;
  const double t0 = 0.0;
  const double t1 = t0 + knot_step(p0, p1);
  const double t2 = t1 + knot_step(p1, p2);
  const double t3 = t2 + knot_step(p2, p3);
  const double t = t1 + u * (t2 - t1);

  const Eigen::VectorXd a1 = ((t1 - t) * p0 + (t - t0) * p1) / (t1 - t0);
  const Eigen::VectorXd a2 = ((t2 - t) * p1 + (t - t1) * p2) / (t2 - t1);
  const Eigen::VectorXd a3 = ((t3 - t) * p2 + (t - t2) * p3) / (t3 - t2);
  const Eigen::VectorXd b1 = ((t2 - t) * a1 + (t - t0) * a2) / (t2 - t0);
  const Eigen::VectorXd b2 = ((t3 - t) * a2 + (t - t1) * a3) / (t3 - t1);
  return ((t2 - t) * b1 + (t - t1) * b2) / (t2 - t1);
}

}  // namespace

CatmullRom::CatmullRom(std::span<const int> times, std::vector<Eigen::VectorXd> points)
    : times_(times.begin(), times.end()), points_(std::move(points)) {
  if (times_.size() < 2 || times_.size() != points_.size())
    throw ValidationError("spline: need at least two timed control points");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (times_[i] <= times_[i - 1]) throw ValidationError("spline: key frames not increasing");
}

Eigen::VectorXd CatmullRom::eval(double time) const {
  const std::size_t n = points_.size();
  if (time <= times_.front()) return points_.front();
  if (time >= times_.back()) return points_.back();
  auto it = std::upper_bound(times_.begin(), times_.end(), time);
  const std::size_t i = std::size_t(it - times_.begin()) - 1;  // times_[i] <= time < times_[i+1]
  if (time == times_[i]) return points_[i];

  const Eigen::VectorXd& p1 = points_[i];
  const Eigen::VectorXd& p2 = points_[i + 1];
  const Eigen::VectorXd p0 = i > 0 ? points_[i - 1] : Eigen::VectorXd(2.0 * p1 - p2);
  const Eigen::VectorXd p3 = i + 2 < n ? points_[i + 2] : Eigen::VectorXd(2.0 * p2 - p1);
  const double u = (time - times_[i]) / double(times_[i + 1] - times_[i]);
  return segment(p0, p1, p2, p3, u);
}

std::vector<Eigen::VectorXd> CatmullRom::sample_frames(int frame_count) const {
  std::vector<Eigen::VectorXd> out;
  out.reserve(std::size_t(frame_count));
  for (int f = 0; f < frame_count; ++f) out.push_back(eval(double(f)));
  return out;
}

std::vector<double> catmull_rom_scalar(std::span<const int> times, std::span<const double> values, int frame_count) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(values.size());
  for (double v : values) pts.push_back(Eigen::VectorXd::Constant(1, v));
  const CatmullRom curve(times, std::move(pts));
  std::vector<double> out;
  out.reserve(std::size_t(frame_count));
  for (const auto& v : curve.sample_frames(frame_count)) out.push_back(v[0]);
  return out;
}

}  // namespace motionforge
