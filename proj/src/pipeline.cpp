#include "motionforge/pipeline.hpp"

#include <algorithm>

#include "motionforge/camera.hpp"
#include "motionforge/errors.hpp"
#include "motionforge/localmotion.hpp"

namespace motionforge {

SceneContext scene_for_design(const MotionDesign& design, DepthGrid depth, std::optional<LabelGrid> mask) {
  if (depth.width != design.canvas_width || depth.height != design.canvas_height)
    throw DimensionMismatchError("dimension mismatch: depth raster is " + std::to_string(depth.width) + "x" +
                                 std::to_string(depth.height) + ", design canvas is " +
                                 std::to_string(design.canvas_width) + "x" + std::to_string(design.canvas_height));
  return make_scene(std::move(depth), std::move(mask), design.effective_intrinsics());
}

bool is_static_path(const CameraPath& path) {
  if (path.frames.empty()) return true;
  const Intrinsics& k0 = path.frames[0].intrinsics;
  return std::all_of(path.frames.begin(), path.frames.end(), [&](const CameraFrame& f) {
    return f.extrinsics.is_exact_identity() && f.intrinsics == k0;
  });
}

Translation translate(const MotionDesign& design, const SceneContext& ctx, const TranslateOptions& options) {
  return translate_with_path(design, ctx, camera::build_camera_path(design, ctx.intrinsics0), options);
}

Translation translate_with_path(const MotionDesign& design, const SceneContext& ctx, CameraPath path,
                                const TranslateOptions& options) {
  design.validate();
  if (ctx.width != design.canvas_width || ctx.height != design.canvas_height)
    throw DimensionMismatchError("dimension mismatch: scene and design canvas differ");
  const int L = design.frame_count;
  if (int(path.size()) != L) throw LengthMismatchError("camera path length differs from frame_count");

  Translation out;
  SignalBundle& b = out.bundle;
  b.frame_count = L;
  b.fps = design.fps;
  b.width = ctx.width;
  b.height = ctx.height;

  if (!is_static_path(path))
    b.camera_tracks = warp::synthesize_camera_tracks(ctx, path, options.points, options.seed);

  std::vector<ScreenBoxTrack> screen_tracks;
  for (const auto& obj : design.objects) {
    objmotion::SceneBoxTrack scene;
    scene.boxes = objmotion::interpolate_boxes(obj.key_boxes, L);
    scene.depth = objmotion::assign_depths(scene.boxes, obj, ctx, &b.warnings);
    ScreenBoxTrack screen = objmotion::project_boxes(scene, path, ctx.intrinsics0);
    b.screen_boxes.push_back({obj.object_id, screen});
    screen_tracks.push_back(std::move(screen));
    out.scene_boxes.push_back(std::move(scene));
  }

  for (const auto& spec : design.local_tracks) {
    const auto dense = localmotion::densify_local(spec, L);
    std::optional<localmotion::ParentBoxes> parent;
    if (spec.parent_object) {
      const auto it = std::find_if(design.objects.begin(), design.objects.end(),
                                   [&](const ObjectSpec& o) { return o.object_id == *spec.parent_object; });
      if (it == design.objects.end()) throw ValidationError("local track parent does not exist");
      const auto idx = std::size_t(it - design.objects.begin());
      parent = localmotion::ParentBoxes{out.scene_boxes[idx].boxes[0], &screen_tracks[idx]};
    }
    b.local_tracks.push_back(localmotion::translate_local(spec, dense, parent, path, ctx));
  }

  const int k = std::min(options.coeff_count, L);
  b.traj_coeffs = codec::encode_tracks(b.camera_tracks, k);
  const auto local_coeffs = codec::encode_tracks(b.local_tracks, k);
  b.traj_coeffs.insert(b.traj_coeffs.end(), local_coeffs.begin(), local_coeffs.end());

  b.bbox_frames = codec::rasterize_boxes(screen_tracks, L, ctx.width, ctx.height);
  out.path = std::move(path);
  return out;
}

}  // namespace motionforge
