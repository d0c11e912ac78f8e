#include "motionforge/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "motionforge/bundle_io.hpp"
#include "motionforge/chain.hpp"
#include "motionforge/design_io.hpp"
#include "motionforge/errors.hpp"
#include "motionforge/kernels.hpp"
#include "motionforge/raster_io.hpp"
#include "motionforge/service.hpp"
#include "motionforge/verify.hpp"

namespace motionforge::cli {

namespace fs = std::filesystem;

namespace {

struct SceneArgs {
  std::string design;
  std::string depth;
  std::optional<double> depth_scale;
  std::string masks;
  std::string image;
};

struct TranslateArgs {
  SceneArgs scene;
  std::string out;
  int points = warp::kDefaultPointCount;
  std::uint64_t seed = 0;
};

void add_scene_flags(CLI::App* cmd, SceneArgs& a) {
  cmd->add_option("--design", a.design, "motion design JSON")->required();
  cmd->add_option("--depth", a.depth, "depth raster (PFM or 16-bit PNG)")->required();
  cmd->add_option("--depth-scale", a.depth_scale, "scene units per PNG16 depth unit (else <depth>.scale)");
  cmd->add_option("--masks", a.masks, "object label PNG (0 = static)");
}

void add_translate_flags(CLI::App* cmd, TranslateArgs& a) {
  add_scene_flags(cmd, a.scene);
  cmd->add_option("--image", a.scene.image, "input RGB image (PNG)");
  cmd->add_option("--out", a.out, "output bundle directory")->required();
  cmd->add_option("--points", a.points, "number of camera tracks")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", a.seed, "point sampling seed");
}

struct LoadedScene {
  MotionDesign design;
  SceneContext ctx;
  std::optional<RgbImage> image;
};

LoadedScene load_scene(const SceneArgs& a) {
  const Bytes text = read_file(a.design);
  MotionDesign design = parse_design(std::string(text.begin(), text.end()));
  DepthGrid depth = load_depth(a.depth, a.depth_scale);
  std::optional<LabelGrid> mask;
  if (!a.masks.empty()) mask = read_png_gray(a.masks);
  SceneContext ctx = scene_for_design(design, std::move(depth), std::move(mask));
  std::optional<RgbImage> image;
  if (!a.image.empty()) {
    image = read_png_rgb(a.image);
    if (image->width != ctx.width || image->height != ctx.height)
      throw DimensionMismatchError("dimension mismatch: " + a.image + " does not match the depth raster");
  }
  return {std::move(design), std::move(ctx), std::move(image)};
}

TranslateOptions options_of(const TranslateArgs& a) {
  TranslateOptions opt;
  opt.points = a.points;
  opt.seed = a.seed;
  return opt;
}

std::string numbered(const char* fmt, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, i);
  return buf;
}

void apply_thread_env() {
  if (const char* env = std::getenv("MOTIONFORGE_THREADS")) {
    try {
      kernels::set_thread_limit(std::stoi(env));
    } catch (const std::exception&) {
      throw ValidationError(std::string("MOTIONFORGE_THREADS must be an integer, got \"") + env + "\"");
    }
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scene-space motion design to screen-space conditioning signals", "motionforge"};
  app.require_subcommand(1);

  TranslateArgs translate_args;
  auto* translate_cmd = app.add_subcommand("translate", "write a signal bundle");
  add_translate_flags(translate_cmd, translate_args);

  TranslateArgs preview_args;
  auto* preview_cmd = app.add_subcommand("preview", "write a signal bundle plus depth-warp preview frames");
  add_translate_flags(preview_cmd, preview_args);

  TranslateArgs chain_args;
  int chunk_len = chain::kDefaultChunkLength;
  int overlap = chain::kDefaultOverlap;
  auto* chain_cmd = app.add_subcommand("chain", "write one re-anchored bundle per overlapping chunk");
  add_translate_flags(chain_cmd, chain_args);
  chain_cmd->add_option("--chunk-len", chunk_len, "frames per chunk");
  chain_cmd->add_option("--overlap", overlap, "frames shared by consecutive chunks");

  SceneArgs verify_args;
  std::string bundle_dir;
  auto* verify_cmd = app.add_subcommand("verify", "recover camera poses from a bundle and report metrics");
  add_scene_flags(verify_cmd, verify_args);
  verify_cmd->add_option("--bundle", bundle_dir, "bundle directory")->required();

  ServiceOptions service_opts;
  int max_upload_mb = 64;
  int ttl_seconds = 3600;
  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP API");
  serve_cmd->add_option("--host", service_opts.host, "bind address");
  serve_cmd->add_option("--port", service_opts.port, "bind port");
  serve_cmd->add_option("--cors-origin", service_opts.cors_origin, "allowed browser origin");
  serve_cmd->add_option("--max-upload-mb", max_upload_mb, "upload size cap");
  serve_cmd->add_option("--session-ttl", ttl_seconds, "session lifetime in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    apply_thread_env();

    if (*translate_cmd || *preview_cmd) {
      const auto& a = *translate_cmd ? translate_args : preview_args;
      const LoadedScene scene = load_scene(a.scene);
      const Translation result = translate(scene.design, scene.ctx, options_of(a));
      write_bundle(result.bundle, a.out);
      if (*preview_cmd) {
        const RgbImage source = scene.image ? *scene.image : warp::depth_shading(scene.ctx.depth);
        const auto frames = warp::render_preview(source, scene.ctx, result.path);
        const fs::path dir = fs::path(a.out) / "preview";
        fs::remove_all(dir);
        fs::create_directories(dir);
        for (std::size_t i = 0; i < frames.size(); ++i) write_png_rgb(dir / numbered("%04zu.png", i), frames[i]);
      }
      return kExitOk;
    }

    if (*chain_cmd) {
      const LoadedScene scene = load_scene(chain_args.scene);
      const auto plan = chain::chain_chunks(scene.design, scene.ctx, chunk_len, overlap, options_of(chain_args));
      nlohmann::json starts = nlohmann::json::array();
      nlohmann::json dirs = nlohmann::json::array();
      for (std::size_t i = 0; i < plan.chunks.size(); ++i) {
        const auto& c = plan.chunks[i];
        const std::string name = numbered("chunk_%03zu", i);
        const fs::path dir = fs::path(chain_args.out) / name;
        write_bundle(c.bundle, dir);
        write_text_file(dir / "camera.json", camera_path_to_json(c.path).dump() + "\n");
        starts.push_back(c.start);
        dirs.push_back(name);
      }
      const nlohmann::json manifest = {{"chunk_len", plan.chunk_len},
                                       {"overlap", plan.overlap},
                                       {"frame_count", scene.design.frame_count},
                                       {"starts", starts},
                                       {"chunks", dirs}};
      write_text_file(fs::path(chain_args.out) / "chain_manifest.json", manifest.dump(2) + "\n");
      return kExitOk;
    }

    if (*verify_cmd) {
      const LoadedScene scene = load_scene(verify_args);
      const SignalBundle bundle = read_bundle(bundle_dir);
      const auto report = verify::verify_bundle(bundle, scene.design, scene.ctx);
      out << verify::report_to_json(report).dump(2) << "\n";
      return kExitOk;
    }

    if (*serve_cmd) {
      service_opts.max_upload_bytes = std::size_t(max_upload_mb) * 1024 * 1024;
      service_opts.session_ttl = std::chrono::seconds(ttl_seconds);
      Service service(service_opts);
      const int port = service.bind();
      if (port < 0) throw IoError("cannot bind " + service_opts.host + ":" + std::to_string(service_opts.port));
      err << "listening on " << service_opts.host << ":" << port << "\n";
      service.listen();
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error [" << e.kind() << "]: " << e.what() << "\n";
    return e.error_class() == ErrorClass::Io ? kExitIo : kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error [IoError]: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitValidation;
}

}  // namespace motionforge::cli
