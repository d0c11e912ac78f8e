#include <gtest/gtest.h>

#include "motionforge/camera.hpp"
#include "motionforge/chain.hpp"
#include "motionforge/design_io.hpp"
#include "motionforge/errors.hpp"
#include "support.hpp"

using namespace motionforge;
using namespace motionforge::chain;

namespace {

MotionDesign long_design(int frames) {
  const std::string last = std::to_string(frames - 1);
  return parse_design(R"({"frame_count":)" + std::to_string(frames) + R"(,"fps":12,
    "camera":{"patterns":[["dolly",0.8],["pan",0.2],["pedestal",0.1]]},
    "objects":[{"id":1,"key_boxes":[{"frame":0,"cx":300,"cy":170,"w":80,"h":60},
                                    {"frame":)" + last + R"(,"cx":360,"cy":180,"w":90,"h":70}]}],
    "local_tracks":[{"parent":1,"samples":[{"frame":0,"x":310,"y":175},{"frame":)" + last +
                      R"(,"x":290,"y":160}]},
                    {"samples":[{"frame":0,"x":100,"y":80},{"frame":20,"x":140,"y":90}]}]})");
}

SceneContext scene() { return fixtures::round_scene(fixtures::bumpy_depth(640, 352)); }

double max_abs(const Extrinsics& a, const Extrinsics& b) {
  return std::max((a.rotation - b.rotation).cwiseAbs().maxCoeff(), (a.translation - b.translation).cwiseAbs().maxCoeff());
}

}  // namespace

TEST(ChunkStarts, SixtyFourWithSixteenOverlap) {
  EXPECT_EQ(chunk_starts(112, 64, 16), (std::vector<int>{0, 48}));
  EXPECT_EQ(chunk_starts(64, 64, 16), (std::vector<int>{0}));
  EXPECT_EQ(chunk_starts(200, 64, 16), (std::vector<int>{0, 48, 96, 144}));
  const auto starts = chunk_starts(1000, 64, 16);
  for (std::size_t i = 0; i < starts.size(); ++i) EXPECT_EQ(starts[i], 48 * int(i));
}

TEST(ChunkStarts, CoversEveryFrame) {
  for (int frames = 16; frames < 300; ++frames) {
    const auto starts = chunk_starts(frames, 16, 5);
    EXPECT_GE(starts.back() + 16, frames);
    if (starts.size() > 1) {
      EXPECT_LT(starts[starts.size() - 2] + 16, frames);
    }
    EXPECT_GE(frames - starts.back(), 6);
  }
}

TEST(ChunkStarts, Validation) {
  EXPECT_THROW(chunk_starts(100, 64, 0), ValidationError);
  EXPECT_THROW(chunk_starts(100, 64, 64), ValidationError);
  EXPECT_THROW(chunk_starts(40, 64, 16), ValidationError);
}

TEST(RebasePath, AnchorZeroUnchanged) {
  const std::vector<PatternSpec> specs{{PatternKind::Orbit, 0.4, 3.0}, {PatternKind::Tilt, 0.1, {}}};
  const CameraPath path = camera::mix_patterns(specs, 10, fixtures::round_intrinsics());
  const CameraPath r = rebase_path(path, 0);
  for (std::size_t l = 0; l < path.size(); ++l) {
    EXPECT_LE(max_abs(r[l].extrinsics, path[l].extrinsics), 1e-15);
    EXPECT_EQ(r[l].intrinsics, path[l].intrinsics);
  }
}

TEST(RebasePath, TruckingCentresAreDifferences) {
  const std::vector<PatternSpec> specs{{PatternKind::Trucking, 0.9, {}}};  // 0.1 per frame over 10 frames
  const CameraPath path = camera::mix_patterns(specs, 10, fixtures::round_intrinsics());
  const CameraPath r = rebase_path(path, 3);
  ASSERT_EQ(r.size(), 7u);
  EXPECT_TRUE(r[0].extrinsics.is_exact_identity());
  for (std::size_t l = 0; l < r.size(); ++l) EXPECT_NEAR(r[l].extrinsics.center().x(), 0.1 * l, 1e-12);
}

TEST(RebasePath, RecomposesToGlobal) {
  const std::vector<PatternSpec> specs{{PatternKind::Orbit, 0.5, 2.5}, {PatternKind::Dolly, 0.4, {}},
                                       {PatternKind::Roll, 0.2, {}},   {PatternKind::Zoom, 0.3, {}}};
  const CameraPath path = camera::mix_patterns(specs, 40, fixtures::round_intrinsics());
  for (int a : {0, 1, 17, 39}) {
    const CameraPath r = rebase_path(path, a);
    for (std::size_t l = 0; l < r.size(); ++l) {
      EXPECT_LE(max_abs(compose(r[l].extrinsics, path[std::size_t(a)].extrinsics), path[std::size_t(a) + l].extrinsics), 1e-9);
      EXPECT_EQ(r[l].intrinsics, path[std::size_t(a) + l].intrinsics);
    }
  }
  EXPECT_THROW(rebase_path(path, 40), IndexError);
  EXPECT_THROW(rebase_path(path, -1), IndexError);
}

TEST(ChainChunks, SingleChunkEqualsGlobal) {
  const MotionDesign d = long_design(64);
  const SceneContext ctx = scene();
  const Translation global = translate(d, ctx);
  const ChunkPlan plan = chain_chunks(d, ctx, 64, 16);
  ASSERT_EQ(plan.chunks.size(), 1u);
  const SignalBundle& b = plan.chunks[0].bundle;
  ASSERT_EQ(b.camera_tracks.size(), global.bundle.camera_tracks.size());
  for (std::size_t i = 0; i < b.camera_tracks.size(); ++i)
    EXPECT_EQ(b.camera_tracks[i].positions, global.bundle.camera_tracks[i].positions);
  for (std::size_t i = 0; i < b.traj_coeffs.size(); ++i)
    EXPECT_EQ(b.traj_coeffs[i].slots, global.bundle.traj_coeffs[i].slots);
  EXPECT_EQ(b.bbox_frames, global.bundle.bbox_frames);
}

TEST(ChainChunks, OverlapsAreBitIdentical) {
  const MotionDesign d = long_design(112);
  const ChunkPlan plan = chain_chunks(d, scene(), 64, 16);
  ASSERT_EQ(plan.chunks.size(), 2u);
  EXPECT_EQ(plan.chunks[1].start, 48);
  EXPECT_EQ(plan.chunks[1].length, 64);
  const SignalBundle& a = plan.chunks[0].bundle;
  const SignalBundle& b = plan.chunks[1].bundle;
  for (int j = 0; j < 16; ++j) {
    const std::size_t la = std::size_t(48 + j), lb = std::size_t(j);
    for (std::size_t i = 0; i < a.camera_tracks.size(); ++i) {
      ASSERT_EQ(a.camera_tracks[i].positions[la], b.camera_tracks[i].positions[lb]);
      ASSERT_EQ(a.camera_tracks[i].visible[la], b.camera_tracks[i].visible[lb]);
    }
    for (std::size_t i = 0; i < a.local_tracks.size(); ++i)
      ASSERT_EQ(a.local_tracks[i].positions[la], b.local_tracks[i].positions[lb]);
    for (std::size_t o = 0; o < a.screen_boxes.size(); ++o)
      ASSERT_EQ(a.screen_boxes[o].screen.boxes[la], b.screen_boxes[o].screen.boxes[lb]);
    ASSERT_EQ(a.bbox_frames[la], b.bbox_frames[lb]);
  }
}

TEST(ChainChunks, CoefficientsAnchoredToChunkStart) {
  const MotionDesign d = long_design(112);
  const ChunkPlan plan = chain_chunks(d, scene(), 64, 16);
  const SignalBundle& b = plan.chunks[1].bundle;
  for (std::size_t i = 0; i < b.camera_tracks.size(); ++i) {
    EXPECT_EQ(b.traj_coeffs[i].slots[0], b.camera_tracks[i].positions[0]);
    EXPECT_EQ(b.traj_coeffs[i].k(), 10u);
  }
  EXPECT_EQ(b.traj_coeffs.size(), b.camera_tracks.size() + b.local_tracks.size());
}

TEST(ChainChunks, ChunkPathsAreRebased) {
  const MotionDesign d = long_design(130);
  const SceneContext ctx = scene();
  const ChunkPlan plan = chain_chunks(d, ctx, 64, 16);
  const CameraPath global = camera::build_camera_path(d, ctx.intrinsics0);
  ASSERT_EQ(plan.chunks.size(), 3u);
  EXPECT_EQ(plan.chunks[2].length, 130 - 96);
  for (const auto& c : plan.chunks) {
    EXPECT_TRUE(c.path[0].extrinsics.is_exact_identity());
    EXPECT_EQ(int(c.path.size()), c.length);
    for (std::size_t l = 0; l < c.path.size(); ++l)
      EXPECT_LE(max_abs(compose(c.path[l].extrinsics, global[std::size_t(c.start)].extrinsics),
                        global[std::size_t(c.start) + l].extrinsics),
                1e-9);
  }
}

TEST(ChainChunks, RejectsShortDesigns) { EXPECT_THROW(chain_chunks(long_design(40), scene(), 64, 16), ValidationError); }

TEST(SpliceBacktraced, ReplacesOverlapAndReencodes) {
  ChunkPlan plan = chain_chunks(long_design(112), scene(), 64, 16);
  auto recovered = plan.chunks[1].bundle.camera_tracks;
  for (auto& t : recovered)
    for (auto& p : t.positions) p += Vec2(0.5, -0.25);
  splice_backtraced(plan, 1, recovered);
  const SignalBundle& b = plan.chunks[1].bundle;
  for (std::size_t i = 0; i < b.camera_tracks.size(); ++i) {
    EXPECT_EQ(b.camera_tracks[i].positions[0], recovered[i].positions[0]);
    EXPECT_EQ(b.camera_tracks[i].positions[15], recovered[i].positions[15]);
    EXPECT_NE(b.camera_tracks[i].positions[16], recovered[i].positions[16]);
    EXPECT_EQ(b.traj_coeffs[i].slots[0], recovered[i].positions[0]);
  }
  EXPECT_THROW(splice_backtraced(plan, 5, recovered), IndexError);
  recovered.pop_back();
  EXPECT_THROW(splice_backtraced(plan, 1, recovered), LengthMismatchError);
}
