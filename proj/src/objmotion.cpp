#include "motionforge/objmotion.hpp"

#include <algorithm>
#include <cmath>

#include "motionforge/codec.hpp"
#include "motionforge/errors.hpp"
#include "motionforge/spline.hpp"
#include "motionforge/warp.hpp"

namespace motionforge::objmotion {

std::vector<BBox2D> interpolate_boxes(std::span<const KeyBox> key_boxes, int frame_count) {
  if (key_boxes.size() < 2) throw ValidationError("interpolate_boxes: need at least 2 key boxes");
  if (key_boxes.front().frame != 0 || key_boxes.back().frame != frame_count - 1)
    throw ValidationError("interpolate_boxes: key frames must span [0, frame_count-1]");

  std::vector<int> times;
  std::vector<double> cx, cy, w, h;
  for (const auto& kb : key_boxes) {
    times.push_back(kb.frame);
    cx.push_back(kb.box.cx);
    cy.push_back(kb.box.cy);
    w.push_back(kb.box.w);
    h.push_back(kb.box.h);
  }
  const auto scx = catmull_rom_scalar(times, cx, frame_count);
  const auto scy = catmull_rom_scalar(times, cy, frame_count);
  const auto sw = catmull_rom_scalar(times, w, frame_count);
  const auto sh = catmull_rom_scalar(times, h, frame_count);

  std::vector<BBox2D> out(static_cast<std::size_t>(frame_count));
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = {scx[l], scy[l], sw[l], sh[l]};
  return out;
}

double box_depth(const BBox2D& box, int object_id, const SceneContext& ctx, bool* used_fallback) {
  const auto r = codec::box_pixels(box, ctx.width, ctx.height);
  if (used_fallback) *used_fallback = false;
  if (r.empty()) throw EmptyMaskError("object " + std::to_string(object_id) + ": frame-0 box covers no pixels");

  double masked = 0.0, all = 0.0;
  std::size_t masked_n = 0, all_n = 0;
  for (int y = r.y0; y < r.y1; ++y) {
    for (int x = r.x0; x < r.x1; ++x) {
      const double d = ctx.depth.at(x, y);
      all += d;
      ++all_n;
      if (ctx.moving_mask.at(x, y) == object_id) {
        masked += d;
        ++masked_n;
      }
    }
  }
  if (masked_n > 0) return masked / double(masked_n);
  if (used_fallback) *used_fallback = true;
  return all / double(all_n);
}

namespace {

// Piecewise-linear in frame index through (frame, value) anchors, held flat
// outside the anchored range.
double piecewise_linear(const std::vector<std::pair<int, double>>& anchors, int frame) {
  if (frame <= anchors.front().first) return anchors.front().second;
  if (frame >= anchors.back().first) return anchors.back().second;
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
    const auto& [fa, va] = anchors[i];
    const auto& [fb, vb] = anchors[i + 1];
    if (frame == fa) return va;
    if (frame < fb) {
      const double u = double(frame - fa) / double(fb - fa);
      return (1.0 - u) * va + u * vb;
    }
  }
  return anchors.back().second;
}

}  // namespace

std::vector<double> assign_depths(std::span<const BBox2D> boxes, const ObjectSpec& spec, const SceneContext& ctx,
                                  std::vector<std::string>* warnings) {
  if (boxes.empty()) throw ValidationError("assign_depths: no boxes");
  bool fallback = false;
  const double d0 = box_depth(boxes[0], spec.object_id, ctx, &fallback);
  if (fallback && warnings)
    warnings->push_back("object " + std::to_string(spec.object_id) +
                        ": no mask pixels inside the frame-0 box, depth averaged over the box interior");

  std::vector<double> depth(boxes.size(), d0);
  switch (spec.depth_mode) {
    case DepthMode::MaskMean: break;
    case DepthMode::ReferencePoint: {
      if (spec.reference_points.empty()) throw ValidationError("reference_point mode needs reference points");
      std::vector<std::pair<int, double>> anchors;
      if (spec.reference_points.front().frame != 0) anchors.emplace_back(0, d0);
      for (const auto& rp : spec.reference_points) anchors.emplace_back(rp.frame, sample_depth(ctx.depth, rp.pixel));
      for (std::size_t l = 0; l < boxes.size(); ++l) depth[l] = piecewise_linear(anchors, int(l));
      break;
    }
    case DepthMode::PerspectiveConsistency: {
      const double h0 = boxes[0].h;
      for (std::size_t l = 0; l < boxes.size(); ++l) {
        if (!(boxes[l].h > 0.0)) throw DomainError("perspective depth: box height must be > 0");
        depth[l] = d0 * (h0 / boxes[l].h);
      }
      break;
    }
  }
  return depth;
}

ScreenBoxTrack project_boxes(const SceneBoxTrack& scene, const CameraPath& path, const Intrinsics& intrinsics0) {
  if (scene.boxes.size() != path.size() || scene.depth.size() != path.size())
    throw LengthMismatchError("project_boxes: track length does not match the camera path");
  ScreenBoxTrack out;
  out.boxes.resize(path.size());
  out.z.resize(path.size());
  for (std::size_t l = 0; l < path.size(); ++l) {
    const BBox2D& b = scene.boxes[l];
    const double d = scene.depth[l];
    const auto& cam = path[l];
    const auto p = warp::transfer(b.center(), d, intrinsics0, cam.extrinsics, cam.intrinsics);
    if (!(p.z > warp::kZMin))
      throw BehindCameraError("box centre passes behind the camera at frame " + std::to_string(l));
    const double depth_ratio = d / p.z;
    out.boxes[l] = {p.pixel.x(), p.pixel.y(), b.w * depth_ratio * (cam.intrinsics.fx / intrinsics0.fx),
                    b.h * depth_ratio * (cam.intrinsics.fy / intrinsics0.fy)};
    out.z[l] = p.z;
  }
  return out;
}

}  // namespace motionforge::objmotion
