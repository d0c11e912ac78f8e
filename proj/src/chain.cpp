#include "motionforge/chain.hpp"

#include <algorithm>

#include "motionforge/errors.hpp"

namespace motionforge::chain {

CameraPath rebase_path(const CameraPath& path, int anchor) {
  if (anchor < 0 || anchor >= int(path.size()))
    throw IndexError("rebase anchor " + std::to_string(anchor) + " outside [0, " + std::to_string(path.size()) + ")");
  const Extrinsics back = path[std::size_t(anchor)].extrinsics.inverse();
  CameraPath out;
  out.frames.reserve(path.size() - std::size_t(anchor));
  for (std::size_t l = std::size_t(anchor); l < path.size(); ++l)
    out.frames.push_back({compose(path[l].extrinsics, back), path[l].intrinsics});
  out.frames[0].extrinsics = Extrinsics::identity();
  return out;
}

std::vector<int> chunk_starts(int frame_count, int chunk_len, int overlap) {
  if (!(overlap > 0 && overlap < chunk_len)) throw ValidationError("chain: need 0 < overlap < chunk_len");
  if (frame_count < chunk_len) throw ValidationError("chain: frame_count must be >= chunk_len");
  std::vector<int> starts{0};
  const int stride = chunk_len - overlap;
  while (starts.back() + chunk_len < frame_count) starts.push_back(int(starts.size()) * stride);
  return starts;
}

namespace {

PointTrack slice_track(const PointTrack& t, int start, int length) {
  PointTrack out;
  out.positions.assign(t.positions.begin() + start, t.positions.begin() + start + length);
  out.visible.assign(t.visible.begin() + start, t.visible.begin() + start + length);
  return out;
}

void reencode(SignalBundle& b, int coeff_count) {
  const int k = std::min(coeff_count, b.frame_count);
  b.traj_coeffs = codec::encode_tracks(b.camera_tracks, k);
  const auto local = codec::encode_tracks(b.local_tracks, k);
  b.traj_coeffs.insert(b.traj_coeffs.end(), local.begin(), local.end());
}

}  // namespace

SignalBundle slice_bundle(const SignalBundle& src, int start, int length, int coeff_count) {
  if (start < 0 || length < 2 || start + length > src.frame_count)
    throw IndexError("slice [" + std::to_string(start) + ", " + std::to_string(start + length) + ") out of range");
  SignalBundle b;
  b.frame_count = length;
  b.fps = src.fps;
  b.width = src.width;
  b.height = src.height;
  b.warnings = src.warnings;
  for (const auto& t : src.camera_tracks) b.camera_tracks.push_back(slice_track(t, start, length));
  for (const auto& t : src.local_tracks) b.local_tracks.push_back(slice_track(t, start, length));
  for (const auto& obj : src.screen_boxes) {
    ObjectSignal sig{obj.object_id, {}};
    sig.screen.boxes.assign(obj.screen.boxes.begin() + start, obj.screen.boxes.begin() + start + length);
    sig.screen.z.assign(obj.screen.z.begin() + start, obj.screen.z.begin() + start + length);
    b.screen_boxes.push_back(std::move(sig));
  }
  if (!src.bbox_frames.empty())
    b.bbox_frames.assign(src.bbox_frames.begin() + start, src.bbox_frames.begin() + start + length);
  reencode(b, coeff_count);
  return b;
}

ChunkPlan chain_translation(const Translation& global, int chunk_len, int overlap, int coeff_count) {
  const int frame_count = global.bundle.frame_count;
  const auto starts = chunk_starts(frame_count, chunk_len, overlap);
  ChunkPlan plan;
  plan.chunk_len = chunk_len;
  plan.overlap = overlap;
  plan.chunks.resize(starts.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(starts.size()); ++i) {
    Chunk& c = plan.chunks[std::size_t(i)];
    c.start = starts[std::size_t(i)];
    c.length = std::min(chunk_len, frame_count - c.start);
    CameraPath rebased = rebase_path(global.path, c.start);
    rebased.frames.resize(std::size_t(c.length));
    c.path = std::move(rebased);
    c.bundle = slice_bundle(global.bundle, c.start, c.length, coeff_count);
  }
  return plan;
}

ChunkPlan chain_chunks(const MotionDesign& design, const SceneContext& ctx, int chunk_len, int overlap,
                       const TranslateOptions& options) {
  chunk_starts(design.frame_count, chunk_len, overlap);  // validates before the expensive pass
  return chain_translation(translate(design, ctx, options), chunk_len, overlap, options.coeff_count);
}

void splice_backtraced(ChunkPlan& plan, std::size_t chunk_index, std::span<const PointTrack> recovered,
                       int coeff_count) {
  if (chunk_index >= plan.chunks.size()) throw IndexError("splice: chunk index out of range");
  Chunk& c = plan.chunks[chunk_index];
  if (recovered.size() != c.bundle.camera_tracks.size())
    throw LengthMismatchError("splice: recovered track count differs from the chunk's camera tracks");
  const std::size_t span = std::size_t(std::min(plan.overlap, c.length));
  for (std::size_t i = 0; i < recovered.size(); ++i) {
    if (recovered[i].size() < span) throw LengthMismatchError("splice: recovered track shorter than the overlap");
    auto& t = c.bundle.camera_tracks[i];
    std::copy_n(recovered[i].positions.begin(), span, t.positions.begin());
    std::copy_n(recovered[i].visible.begin(), span, t.visible.begin());
  }
  reencode(c.bundle, coeff_count);
}

}  // namespace motionforge::chain
