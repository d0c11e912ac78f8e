#include "motionforge/camera.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <string>

#include "motionforge/errors.hpp"
#include "motionforge/geometry.hpp"
#include "motionforge/spline.hpp"

namespace motionforge::camera {

namespace {

Intrinsics scaled_focal(const Intrinsics& k0, double factor) {
  Intrinsics k = k0;
  k.fx = k0.fx * factor;
  k.fy = k0.fy * factor;
  return k;
}

Extrinsics from_center(const Vec3& c) {
  Extrinsics e;
  e.translation = -c;
  return e;
}

Extrinsics from_rotation(const Mat3& r) {
  Extrinsics e;
  e.rotation = r;
  return e;
}

double zoom_factor(const PatternSpec& spec, double s) {
  const double f = 1.0 + spec.magnitude * s;
  if (!(f > 0.0)) throw DomainError("zoom drives the focal length to " + std::to_string(f) + "x, must stay > 0");
  return f;
}

Vec3 center_shift(const PatternSpec& spec, double s) {
  const double d = spec.magnitude * s;
  switch (spec.pattern) {
    case PatternKind::Trucking: return {d, 0.0, 0.0};
    case PatternKind::Pedestal: return {0.0, -d, 0.0};
    case PatternKind::Dolly: return {0.0, 0.0, d};
    case PatternKind::Circle: return *spec.radius * Vec3(std::sin(d), std::cos(d) - 1.0, 0.0);
    default: return Vec3::Zero();
  }
}

Mat3 orientation_rotation(const PatternSpec& spec, double s) {
  const double theta = spec.magnitude * s;
  switch (spec.pattern) {
    case PatternKind::Pan: return rot_y(-theta);
    case PatternKind::Tilt: return rot_x(-theta);
    case PatternKind::Roll: return rot_z(-theta);
    default: return Mat3::Identity();
  }
}

Extrinsics orbit_pose(const PatternSpec& spec, double s) {
  const Vec3 pivot(0.0, 0.0, *spec.radius);
  Extrinsics e;
  e.rotation = rot_y(spec.magnitude * s);
  e.translation = pivot - e.rotation * pivot;
  return e;
}

void check_radius(const PatternSpec& spec) {
  if (spec.pattern != PatternKind::Orbit && spec.pattern != PatternKind::Circle) return;
  if (!spec.radius || !(*spec.radius > 0.0))
    throw DomainError(std::string(pattern_name(spec.pattern)) + " needs a radius > 0");
}

}  // namespace

std::pair<Extrinsics, Intrinsics> pattern_pose(const PatternSpec& spec, double s, const Intrinsics& intrinsics0) {
  check_radius(spec);
  switch (spec.pattern) {
    case PatternKind::Trucking:
    case PatternKind::Pedestal:
    case PatternKind::Dolly:
    case PatternKind::Circle: return {from_center(center_shift(spec, s)), intrinsics0};
    case PatternKind::Pan:
    case PatternKind::Tilt:
    case PatternKind::Roll: return {from_rotation(orientation_rotation(spec, s)), intrinsics0};
    case PatternKind::Zoom: return {Extrinsics::identity(), scaled_focal(intrinsics0, zoom_factor(spec, s))};
    case PatternKind::Orbit: return {orbit_pose(spec, s), intrinsics0};
    case PatternKind::Static: return {Extrinsics::identity(), intrinsics0};
  }
  return {Extrinsics::identity(), intrinsics0};
}

CameraPath mix_patterns(std::span<const PatternSpec> specs, int frame_count, const Intrinsics& intrinsics0) {
  if (frame_count < 2) throw ValidationError("camera path needs frame_count >= 2");
  for (const auto& spec : specs) check_radius(spec);

  CameraPath path;
  path.frames.resize(std::size_t(frame_count));
  path.frames[0] = {Extrinsics::identity(), intrinsics0};
  for (int l = 1; l < frame_count; ++l) {
    const double s = double(l) / double(frame_count - 1);

    Vec3 center = Vec3::Zero();
    Mat3 pan = Mat3::Identity(), tilt = Mat3::Identity(), roll = Mat3::Identity();
    Extrinsics orbit = Extrinsics::identity();
    double focal = 1.0;
    for (const auto& spec : specs) {
      switch (spec.pattern) {
        case PatternKind::Trucking:
        case PatternKind::Pedestal:
        case PatternKind::Dolly:
        case PatternKind::Circle: center += center_shift(spec, s); break;
        case PatternKind::Pan: pan = pan * orientation_rotation(spec, s); break;
        case PatternKind::Tilt: tilt = tilt * orientation_rotation(spec, s); break;
        case PatternKind::Roll: roll = roll * orientation_rotation(spec, s); break;
        case PatternKind::Zoom: focal *= zoom_factor(spec, s); break;
        case PatternKind::Orbit: orbit = compose(orbit, orbit_pose(spec, s)); break;
        case PatternKind::Static: break;
      }
    }
    const Extrinsics rot = from_rotation(pan * tilt * roll);
    const Extrinsics trans = from_center(center);
    path.frames[std::size_t(l)] = {compose(orbit, compose(rot, trans)), scaled_focal(intrinsics0, focal)};
  }
  return path;
}

CameraPath keyframe_path(std::span<const CameraKeyframe> keys, int frame_count, const Intrinsics& intrinsics0) {
  if (frame_count < 2) throw ValidationError("camera path needs frame_count >= 2");
  if (keys.size() < 2) throw ValidationError("keyframe path needs at least two keys");
  for (std::size_t i = 1; i < keys.size(); ++i)
    if (keys[i].frame <= keys[i - 1].frame) throw ValidationError("camera keyframes not increasing");
  if (keys.front().frame != 0) throw ValidationError("first camera keyframe must be at frame 0");
  if (keys.back().frame != frame_count - 1) throw ValidationError("last camera keyframe must be at frame_count-1");
  const auto& p0 = keys.front().pose;
  if ((p0.rotation - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9 || p0.translation.cwiseAbs().maxCoeff() > 1e-9)
    throw ValidationError("frame-0 camera keyframe must be the identity pose");
  for (const auto& k : keys) {
    k.pose.validate();
    if (!(k.focal_scale > 0.0)) throw ValidationError("camera keyframe focal_scale must be > 0");
  }

  if (keys.front().focal_scale != 1.0) throw ValidationError("frame-0 camera keyframe must have focal_scale 1");

  CameraPath path;
  path.frames.resize(std::size_t(frame_count));

  std::vector<int> times;
  std::vector<Eigen::VectorXd> centers;
  for (const auto& k : keys) {
    times.push_back(k.frame);
    centers.emplace_back(k.pose.center());
  }
  const CatmullRom center_curve(times, std::move(centers));

  std::size_t seg = 0;
  for (int l = 0; l < frame_count; ++l) {
    while (seg + 1 < keys.size() - 1 && l >= keys[seg + 1].frame) ++seg;
    const auto& a = keys[seg];
    const auto& b = keys[seg + 1];
    if (l == a.frame || l == b.frame) {
      const auto& key = l == a.frame ? a : b;
      path.frames[std::size_t(l)] = {key.pose, scaled_focal(intrinsics0, key.focal_scale)};
      continue;
    }
    const double u = double(l - a.frame) / double(b.frame - a.frame);
    const Eigen::Quaterniond qa(a.pose.rotation);
    const Eigen::Quaterniond qb(b.pose.rotation);
    const Mat3 r = qa.slerp(u, qb).normalized().toRotationMatrix();
    const Vec3 c = center_curve.eval(double(l));
    Extrinsics e;
    e.rotation = r;
    e.translation = -(r * c);
    const double scale = (1.0 - u) * a.focal_scale + u * b.focal_scale;
    path.frames[std::size_t(l)] = {e, scaled_focal(intrinsics0, scale)};
  }
  path.frames[0] = {Extrinsics::identity(), intrinsics0};
  return path;
}

CameraPath build_camera_path(const MotionDesign& design, const Intrinsics& intrinsics0) {
  if (const auto* patterns = std::get_if<std::vector<PatternSpec>>(&design.camera))
    return mix_patterns(*patterns, design.frame_count, intrinsics0);
  return keyframe_path(std::get<std::vector<CameraKeyframe>>(design.camera), design.frame_count, intrinsics0);
}

}  // namespace motionforge::camera
