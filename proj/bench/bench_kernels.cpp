// Serial reference vs OpenMP kernels on a 640x352 scene, 32 frames.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "motionforge/camera.hpp"
#include "motionforge/kernels.hpp"
#include "motionforge/warp.hpp"

using namespace motionforge;

namespace {

struct Workload {
  SceneContext ctx;
  CameraPath path;
  std::vector<Vec2> pixels;
  std::vector<double> depths;
  RgbImage image;
  std::vector<ScreenBoxTrack> boxes;
  std::vector<PointTrack> tracks;

  Workload() {
    DepthGrid depth(640, 352);
    for (int y = 0; y < 352; ++y)
      for (int x = 0; x < 640; ++x) depth.at(x, y) = float(4.0 + 0.8 * std::sin(0.031 * x) * std::cos(0.043 * y));
    ctx = make_scene(std::move(depth));
    const std::vector<PatternSpec> specs{{PatternKind::Dolly, 0.6, {}}, {PatternKind::Pan, 0.2, {}},
                                         {PatternKind::Orbit, 0.2, 4.0}};
    path = camera::mix_patterns(specs, 32, ctx.intrinsics0);
    pixels = warp::sample_static_points(ctx, 4096, 1);
    for (const auto& p : pixels) depths.push_back(ctx.depth.at(int(p.x()), int(p.y())));

    image = RgbImage(640, 352);
    std::mt19937 rng(2);
    for (auto& v : image.data) v = std::uint8_t(rng());

    std::uniform_real_distribution<double> u(0, 1);
    boxes.resize(16);
    for (auto& t : boxes)
      for (int l = 0; l < 32; ++l) {
        t.boxes.push_back({640 * u(rng), 352 * u(rng), 20 + 150 * u(rng), 20 + 100 * u(rng)});
        t.z.push_back(1.0);
      }
    tracks = kernels::serial::warp_points(pixels, depths, ctx.intrinsics0, path);
  }
};

const Workload& workload() {
  static const Workload w;
  return w;
}

template <bool Parallel>
void BM_WarpPoints(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) {
    auto out = Parallel ? kernels::omp::warp_points(w.pixels, w.depths, w.ctx.intrinsics0, w.path)
                        : kernels::serial::warp_points(w.pixels, w.depths, w.ctx.intrinsics0, w.path);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(w.pixels.size() * w.path.size()));
}

template <bool Parallel>
void BM_SplatFrames(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) {
    auto out = Parallel ? kernels::omp::splat_frames(w.image, w.ctx.depth, w.ctx.intrinsics0, w.path)
                        : kernels::serial::splat_frames(w.image, w.ctx.depth, w.ctx.intrinsics0, w.path);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(w.path.size()));
}

template <bool Parallel>
void BM_RasterizeFrames(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) {
    auto out = Parallel ? kernels::omp::rasterize_frames(w.boxes, 32, 640, 352)
                        : kernels::serial::rasterize_frames(w.boxes, 32, 640, 352);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * 32);
}

template <bool Parallel>
void BM_EncodeTracks(benchmark::State& state) {
  const auto& w = workload();
  for (auto _ : state) {
    auto out = Parallel ? kernels::omp::encode_tracks(w.tracks, 10) : kernels::serial::encode_tracks(w.tracks, 10);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(w.tracks.size()));
}

}  // namespace

BENCHMARK(BM_WarpPoints<false>)->Name("warp_points/serial")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WarpPoints<true>)->Name("warp_points/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SplatFrames<false>)->Name("splat_frames/serial")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SplatFrames<true>)->Name("splat_frames/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RasterizeFrames<false>)->Name("rasterize_frames/serial")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RasterizeFrames<true>)->Name("rasterize_frames/omp")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EncodeTracks<false>)->Name("encode_tracks/serial")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EncodeTracks<true>)->Name("encode_tracks/omp")->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
  if (const char* env = std::getenv("MOTIONFORGE_THREADS")) kernels::set_thread_limit(std::atoi(env));
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
