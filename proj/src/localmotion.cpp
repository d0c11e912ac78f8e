#include "motionforge/localmotion.hpp"

#include "motionforge/errors.hpp"
#include "motionforge/warp.hpp"

namespace motionforge::localmotion {

std::vector<Vec2> densify_local(const LocalTrackSpec& spec, int frame_count) {
  const auto& s = spec.samples;
  if (s.size() < 2) throw ValidationError("local track needs at least 2 samples");
  if (s.front().frame != 0) throw ValidationError("local track must start at frame 0");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i].frame <= s[i - 1].frame) throw ValidationError("local track sample frames not increasing");
  if (s.back().frame > frame_count - 1) throw ValidationError("local track sample beyond the last frame");

  std::vector<Vec2> out(static_cast<std::size_t>(frame_count));
  std::size_t seg = 0;
  for (int l = 0; l < frame_count; ++l) {
    while (seg + 1 < s.size() && l >= s[seg + 1].frame) ++seg;
    if (seg + 1 == s.size() || l == s[seg].frame) {
      out[std::size_t(l)] = s[seg].pixel;
      continue;
    }
    const double u = double(l - s[seg].frame) / double(s[seg + 1].frame - s[seg].frame);
    out[std::size_t(l)] = (1.0 - u) * s[seg].pixel + u * s[seg + 1].pixel;
  }
  return out;
}

PointTrack translate_local(const LocalTrackSpec& spec, std::span<const Vec2> dense,
                           const std::optional<ParentBoxes>& parent, const CameraPath& path,
                           const SceneContext& ctx) {
  if (dense.size() != path.size()) throw LengthMismatchError("local track length does not match the camera path");
  PointTrack out;
  out.positions.resize(dense.size());
  out.visible.resize(dense.size());

  if (parent) {
    const BBox2D& c0 = parent->scene_box0;
    const Vec2 start = dense[0];
    if (!(start.x() >= c0.cx - 0.5 * c0.w && start.x() < c0.cx + 0.5 * c0.w && start.y() >= c0.cy - 0.5 * c0.h &&
          start.y() < c0.cy + 0.5 * c0.h))
      throw OutsideParentError("local track starts outside its parent's frame-0 box");
    if (!parent->screen || parent->screen->boxes.size() != dense.size())
      throw LengthMismatchError("parent screen track length does not match the local track");
    for (std::size_t l = 0; l < dense.size(); ++l) {
      const Vec2 rho((dense[l].x() - c0.cx) / c0.w, (dense[l].y() - c0.cy) / c0.h);
      const BBox2D& b = parent->screen->boxes[l];
      out.positions[l] = Vec2(b.cx + rho.x() * b.w, b.cy + rho.y() * b.h);
      out.visible[l] = warp::in_canvas(out.positions[l], path[l].intrinsics);
    }
    return out;
  }

  const double depth = sample_depth(ctx.depth, dense[0]);
  for (std::size_t l = 0; l < dense.size(); ++l) {
    const auto p = warp::transfer(dense[l], depth, ctx.intrinsics0, path[l].extrinsics, path[l].intrinsics);
    out.positions[l] = p.pixel;
    out.visible[l] = p.visible;
  }
  return out;
}

}  // namespace motionforge::localmotion
