#pragma once

#include <span>
#include <vector>

#include "motionforge/pipeline.hpp"

namespace motionforge::chain {

inline constexpr int kDefaultChunkLength = 64;
inline constexpr int kDefaultOverlap = 16;

struct Chunk {
  int start = 0;     // global index of the chunk's first frame
  int length = 0;    // frames in this chunk (the last chunk may be shorter)
  CameraPath path;   // re-anchored so frame 0 is the identity
  SignalBundle bundle;
};

struct ChunkPlan {
  int chunk_len = kDefaultChunkLength;
  int overlap = kDefaultOverlap;
  std::vector<Chunk> chunks;
};

/// E'_l = E_{anchor+l} ∘ E_anchor^{-1}, intrinsics sliced. Throws IndexError.
CameraPath rebase_path(const CameraPath& path, int anchor);

/// Chunk starts i * (chunk_len - overlap); chunks continue until one reaches
/// the last frame.
std::vector<int> chunk_starts(int frame_count, int chunk_len, int overlap);

/// Slices frames [start, start + length) out of a bundle and re-encodes the
/// trajectory coefficients against the slice's own first frame.
SignalBundle slice_bundle(const SignalBundle& bundle, int start, int length, int coeff_count);

/// Translates the full design once, then re-anchors and slices it per chunk.
/// Throws ValidationError unless frame_count >= chunk_len and 0 < overlap < chunk_len.
ChunkPlan chain_chunks(const MotionDesign& design, const SceneContext& ctx, int chunk_len = kDefaultChunkLength,
                       int overlap = kDefaultOverlap, const TranslateOptions& options = {});
ChunkPlan chain_translation(const Translation& global, int chunk_len, int overlap, int coeff_count);

/// Replaces the leading overlap frames of a chunk's camera tracks with
/// externally recovered tracks (e.g. motion traced back from generated
/// frames) and re-encodes their coefficients.
void splice_backtraced(ChunkPlan& plan, std::size_t chunk_index, std::span<const PointTrack> recovered,
                       int coeff_count = codec::kDefaultCoeffCount);

}  // namespace motionforge::chain
