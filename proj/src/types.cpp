#include "motionforge/types.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "motionforge/errors.hpp"

namespace motionforge {

namespace {

std::string at_path(const std::string& path, const std::string& what) { return path + ": " + what; }

bool inside_box(const BBox2D& b, const Vec2& p) {
  return p.x() >= b.cx - 0.5 * b.w && p.x() < b.cx + 0.5 * b.w && p.y() >= b.cy - 0.5 * b.h &&
         p.y() < b.cy + 0.5 * b.h;
}

}  // namespace

void Intrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw ValidationError("intrinsics: focal lengths must be positive");
  if (width <= 0 || height <= 0) throw ValidationError("intrinsics: canvas size must be positive");
  if (!(cx >= 0.0 && cx <= width) || !(cy >= 0.0 && cy <= height))
    throw ValidationError("intrinsics: principal point outside canvas");
}

Intrinsics default_intrinsics(int width, int height) {
  const double half_fov = 0.5 * kDefaultVerticalFovDeg * std::numbers::pi / 180.0;
  Intrinsics k;
  k.fy = 0.5 * height / std::tan(half_fov);
  k.fx = k.fy;
  k.cx = 0.5 * width;
  k.cy = 0.5 * height;
  k.width = width;
  k.height = height;
  return k;
}

Extrinsics Extrinsics::inverse() const {
  Extrinsics inv;
  inv.rotation = rotation.transpose();
  inv.translation = -(inv.rotation * translation);
  return inv;
}

bool Extrinsics::is_exact_identity() const {
  return rotation == Mat3::Identity() && translation == Vec3::Zero();
}

void Extrinsics::validate(double tol) const {
  if (!rotation.allFinite() || !translation.allFinite()) throw ValidationError("extrinsics: non-finite entries");
  if ((rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff() > tol)
    throw ValidationError("extrinsics: rotation is not orthonormal");
  if (std::abs(rotation.determinant() - 1.0) > tol) throw ValidationError("extrinsics: det(R) != +1");
}

Extrinsics compose(const Extrinsics& a, const Extrinsics& b) {
  Extrinsics out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

void CameraPath::validate(double tol) const {
  if (frames.empty()) throw ValidationError("camera path is empty");
  const auto& f0 = frames.front().extrinsics;
  if ((f0.rotation - Mat3::Identity()).cwiseAbs().maxCoeff() > tol || f0.translation.cwiseAbs().maxCoeff() > tol)
    throw ValidationError("camera path: frame 0 must be the identity pose");
  for (std::size_t l = 0; l < frames.size(); ++l) {
    frames[l].extrinsics.validate(tol);
    frames[l].intrinsics.validate();
    if (frames[l].intrinsics.width != frames[0].intrinsics.width ||
        frames[l].intrinsics.height != frames[0].intrinsics.height)
      throw ValidationError("camera path: frames disagree on canvas size");
  }
}

void SceneContext::validate() const {
  if (width <= 0 || height <= 0) throw ValidationError("scene: canvas size must be positive");
  if (depth.width != width || depth.height != height)
    throw DimensionMismatchError("dimension mismatch: depth raster does not match scene size");
  if (moving_mask.width != width || moving_mask.height != height)
    throw DimensionMismatchError("dimension mismatch: mask raster does not match scene size");
  for (float d : depth.data)
    if (!std::isfinite(d) || !(d > 0.0f)) throw NonPositiveDepthError("scene: depth values must be finite and > 0");
  intrinsics0.validate();
  if (intrinsics0.width != width || intrinsics0.height != height)
    throw DimensionMismatchError("dimension mismatch: intrinsics canvas does not match scene size");
}

SceneContext make_scene(DepthGrid depth, std::optional<LabelGrid> mask, std::optional<Intrinsics> intrinsics) {
  SceneContext ctx;
  ctx.width = depth.width;
  ctx.height = depth.height;
  ctx.moving_mask = mask ? std::move(*mask) : LabelGrid(depth.width, depth.height, 0);
  ctx.intrinsics0 = intrinsics ? *intrinsics : default_intrinsics(depth.width, depth.height);
  ctx.depth = std::move(depth);
  ctx.validate();
  return ctx;
}

double sample_depth(const DepthGrid& depth, const Vec2& pixel) {
  const double x = std::clamp(pixel.x(), 0.0, double(depth.width - 1));
  const double y = std::clamp(pixel.y(), 0.0, double(depth.height - 1));
  const int x0 = int(std::floor(x));
  const int y0 = int(std::floor(y));
  const int x1 = std::min(x0 + 1, depth.width - 1);
  const int y1 = std::min(y0 + 1, depth.height - 1);
  const double ax = x - x0;
  const double ay = y - y0;
  if (ax == 0.0 && ay == 0.0) return depth.at(x0, y0);
  const double top = (1.0 - ax) * depth.at(x0, y0) + ax * depth.at(x1, y0);
  const double bottom = (1.0 - ax) * depth.at(x0, y1) + ax * depth.at(x1, y1);
  return (1.0 - ay) * top + ay * bottom;
}

namespace {
constexpr std::array<std::pair<PatternKind, const char*>, 10> kPatternNames{{
    {PatternKind::Trucking, "trucking"},
    {PatternKind::Pedestal, "pedestal"},
    {PatternKind::Dolly, "dolly"},
    {PatternKind::Pan, "pan"},
    {PatternKind::Tilt, "tilt"},
    {PatternKind::Roll, "roll"},
    {PatternKind::Zoom, "zoom"},
    {PatternKind::Orbit, "orbit"},
    {PatternKind::Circle, "circle"},
    {PatternKind::Static, "static"},
}};
}  // namespace

const char* pattern_name(PatternKind kind) {
  for (const auto& [k, name] : kPatternNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<PatternKind> pattern_from_name(const std::string& name) {
  for (const auto& [k, n] : kPatternNames)
    if (name == n) return k;
  return std::nullopt;
}

void PatternSpec::validate() const {
  const bool needs_radius = pattern == PatternKind::Orbit || pattern == PatternKind::Circle;
  if (needs_radius && !radius) throw ValidationError(std::string(pattern_name(pattern)) + " requires a radius");
  if (!needs_radius && radius) throw ValidationError(std::string(pattern_name(pattern)) + " takes no radius");
  if (needs_radius && !(*radius > 0.0)) throw DomainError(std::string(pattern_name(pattern)) + " radius must be > 0");
  if (!std::isfinite(magnitude)) throw ValidationError("pattern magnitude must be finite");
  if (pattern == PatternKind::Static && magnitude != 0.0) throw ValidationError("static pattern takes magnitude 0");
  if (pattern != PatternKind::Static && magnitude == 0.0)
    throw ValidationError(std::string(pattern_name(pattern)) + " magnitude must be non-zero");
}

Intrinsics MotionDesign::effective_intrinsics() const {
  return intrinsics ? *intrinsics : default_intrinsics(canvas_width, canvas_height);
}

void MotionDesign::validate() const {
  const int L = frame_count;
  if (L < 2) throw ValidationError(at_path("$.frame_count", "must be >= 2"));
  if (fps <= 0) throw ValidationError(at_path("$.fps", "must be > 0"));
  if (canvas_width <= 0 || canvas_height <= 0) throw ValidationError(at_path("$.canvas", "size must be positive"));
  if (intrinsics) {
    try {
      intrinsics->validate();
    } catch (const ValidationError& e) {
      throw ValidationError(at_path("$.intrinsics", e.what()));
    }
  }

  if (const auto* patterns = std::get_if<std::vector<PatternSpec>>(&camera)) {
    for (std::size_t i = 0; i < patterns->size(); ++i) {
      const std::string path = "$.camera.patterns[" + std::to_string(i) + "]";
      try {
        (*patterns)[i].validate();
      } catch (const DomainError& e) {
        throw DomainError(at_path(path, e.what()));
      } catch (const ValidationError& e) {
        throw ValidationError(at_path(path, e.what()));
      }
    }
  } else {
    const auto& keys = std::get<std::vector<CameraKeyframe>>(camera);
    if (keys.size() < 2) throw ValidationError(at_path("$.camera.keyframes", "need at least 2 keyframes"));
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const std::string path = "$.camera.keyframes[" + std::to_string(i) + "]";
      if (i > 0 && keys[i].frame <= keys[i - 1].frame)
        throw ValidationError(at_path(path, "key frames not increasing"));
      if (!(keys[i].focal_scale > 0.0)) throw ValidationError(at_path(path + ".focal_scale", "must be > 0"));
      try {
        keys[i].pose.validate();
      } catch (const ValidationError& e) {
        throw ValidationError(at_path(path, e.what()));
      }
    }
    if (keys.front().frame != 0) throw ValidationError(at_path("$.camera.keyframes[0].frame", "must be 0"));
    if (keys.back().frame != L - 1)
      throw ValidationError(at_path("$.camera.keyframes", "last key must sit at frame_count-1"));
    const auto& p0 = keys.front().pose;
    if ((p0.rotation - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9 || p0.translation.cwiseAbs().maxCoeff() > 1e-9)
      throw ValidationError(at_path("$.camera.keyframes[0]", "frame-0 key must be the identity pose"));
    if (keys.front().focal_scale != 1.0)
      throw ValidationError(at_path("$.camera.keyframes[0].focal_scale", "frame-0 key must have focal_scale 1"));
  }

  const double mx = 0.5 * canvas_width;
  const double my = 0.5 * canvas_height;
  std::set<int> ids;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& obj = objects[i];
    const std::string path = "$.objects[" + std::to_string(i) + "]";
    if (obj.object_id < 1) throw ValidationError(at_path(path + ".id", "object ids start at 1"));
    if (!ids.insert(obj.object_id).second) throw ValidationError(at_path(path + ".id", "duplicate object id"));
    if (obj.key_boxes.size() < 2) throw ValidationError(at_path(path + ".key_boxes", "need at least 2 key boxes"));
    for (std::size_t k = 0; k < obj.key_boxes.size(); ++k) {
      const auto& kb = obj.key_boxes[k];
      const std::string kpath = path + ".key_boxes[" + std::to_string(k) + "]";
      if (k > 0 && kb.frame <= obj.key_boxes[k - 1].frame)
        throw ValidationError(at_path(path + ".key_boxes", "key frames not increasing"));
      if (!(kb.box.w > 0.0) || !(kb.box.h > 0.0)) throw ValidationError(at_path(kpath, "w and h must be > 0"));
      if (kb.box.cx < -mx || kb.box.cx > canvas_width + mx || kb.box.cy < -my || kb.box.cy > canvas_height + my)
        throw ValidationError(at_path(kpath, "box centre outside the expanded canvas"));
    }
    if (obj.key_boxes.front().frame != 0 || obj.key_boxes.back().frame != L - 1)
      throw ValidationError(at_path(path + ".key_boxes", "key frames must span [0, frame_count-1]"));
    if (obj.depth_mode == DepthMode::ReferencePoint) {
      if (obj.reference_points.empty())
        throw ValidationError(at_path(path + ".reference_points", "reference_point mode needs at least one point"));
      for (std::size_t k = 0; k < obj.reference_points.size(); ++k) {
        const auto& rp = obj.reference_points[k];
        const std::string rpath = path + ".reference_points[" + std::to_string(k) + "]";
        if (k > 0 && rp.frame <= obj.reference_points[k - 1].frame)
          throw ValidationError(at_path(rpath, "reference frames not increasing"));
        if (rp.frame < 0 || rp.frame > L - 1) throw ValidationError(at_path(rpath, "frame out of range"));
        if (rp.pixel.x() < 0 || rp.pixel.x() > canvas_width - 1 || rp.pixel.y() < 0 ||
            rp.pixel.y() > canvas_height - 1)
          throw ValidationError(at_path(rpath, "reference pixel outside canvas"));
      }
    }
  }

  for (std::size_t i = 0; i < local_tracks.size(); ++i) {
    const auto& tr = local_tracks[i];
    const std::string path = "$.local_tracks[" + std::to_string(i) + "]";
    if (tr.samples.size() < 2) throw ValidationError(at_path(path + ".samples", "need at least 2 samples"));
    for (std::size_t k = 1; k < tr.samples.size(); ++k)
      if (tr.samples[k].frame <= tr.samples[k - 1].frame)
        throw ValidationError(at_path(path + ".samples", "sample frames not increasing"));
    if (tr.samples.front().frame != 0) throw ValidationError(at_path(path + ".samples[0].frame", "must be 0"));
    if (tr.samples.back().frame > L - 1) throw ValidationError(at_path(path + ".samples", "frame beyond clip end"));
    for (const auto& s : tr.samples)
      if (!s.pixel.allFinite()) throw ValidationError(at_path(path + ".samples", "non-finite position"));
    if (tr.parent_object) {
      auto it = std::find_if(objects.begin(), objects.end(),
                             [&](const ObjectSpec& o) { return o.object_id == *tr.parent_object; });
      if (it == objects.end()) throw ValidationError(at_path(path + ".parent", "unknown parent object"));
      if (!inside_box(it->key_boxes.front().box, tr.samples.front().pixel))
        throw OutsideParentError(at_path(path + ".samples[0]", "start point outside the parent's frame-0 box"));
    }
  }
}

}  // namespace motionforge
