#pragma once

// Fixtures shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>
#include <random>
#include <string>

#include "motionforge/cli.hpp"
#include "motionforge/types.hpp"

namespace motionforge::fixtures {

/// Fronto-parallel intrinsics with round numbers: fx = fy = 400, principal
/// point at the centre of a 640x352 canvas.
inline Intrinsics round_intrinsics() { return {400.0, 400.0, 320.0, 176.0, 640, 352}; }

inline DepthGrid flat_depth(int w, int h, float d) { return DepthGrid(w, h, d); }

/// Smooth, clearly non-planar depth in roughly [3, 6].
inline DepthGrid bumpy_depth(int w, int h) {
  DepthGrid g(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      g.at(x, y) = float(4.0 + 0.8 * std::sin(0.031 * x) * std::cos(0.043 * y) + 0.002 * x + 0.0015 * y);
  return g;
}

inline SceneContext round_scene(DepthGrid depth, std::optional<LabelGrid> mask = std::nullopt) {
  Intrinsics k = round_intrinsics();
  k.width = depth.width;
  k.height = depth.height;
  k.cx = 0.5 * depth.width;
  k.cy = 0.5 * depth.height;
  return make_scene(std::move(depth), std::move(mask), k);
}

/// Fresh, empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& tag) {
  static std::mt19937_64 rng{std::random_device{}()};
  auto dir = std::filesystem::temp_directory_path() / ("motionforge_" + tag + "_" + std::to_string(rng()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "motionforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

/// Relative path -> file contents for every regular file under root.
inline std::vector<std::pair<std::string, std::string>> read_tree(const std::filesystem::path& root) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    files.emplace_back(std::filesystem::relative(e.path(), root).string(),
                       std::string(std::istreambuf_iterator<char>(in), {}));
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace motionforge::fixtures
