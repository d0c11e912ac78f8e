#include "motionforge/service.hpp"

#include <httplib.h>

#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>

#include "motionforge/bundle_io.hpp"
#include "motionforge/design_io.hpp"
#include "motionforge/errors.hpp"
#include "motionforge/raster_io.hpp"
#include "motionforge/verify.hpp"
#include "motionforge/warp.hpp"

namespace motionforge {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

// Everything derived from one (session, design) pair. Frames are encoded to
// PNG lazily and memoized.
struct CachedTranslation {
  Translation translation;
  std::string body;
  SceneContext ctx;

  std::mutex frame_mutex;
  std::optional<std::vector<RgbImage>> preview;
};

struct Session {
  std::string id;
  Clock::time_point created;
  SceneContext ctx;
  std::optional<Intrinsics> intrinsics;  // explicit upload overrides the design
  std::optional<RgbImage> image;

  std::mutex cache_mutex;
  std::map<std::string, std::shared_ptr<CachedTranslation>> cache;
  std::string latest;
};

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& kind, const std::string& message) {
  send_json(res, status, {{"error", kind}, {"message", message}});
}

}  // namespace

struct Service::Impl {
  ServiceOptions options;
  httplib::Server server;
  int bound_port = -1;

  std::shared_mutex sessions_mutex;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  std::mutex id_mutex;
  std::mt19937_64 id_rng{std::random_device{}()};

  explicit Impl(ServiceOptions opts) : options(std::move(opts)) { routes(); }

  std::string new_id() {
    std::lock_guard lock(id_mutex);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id_rng()));
    return buf;
  }

  void purge_expired() {
    const auto now = Clock::now();
    std::unique_lock lock(sessions_mutex);
    std::erase_if(sessions, [&](const auto& kv) { return now - kv.second->created > options.session_ttl; });
  }

  std::shared_ptr<Session> find(const std::string& id) {
    purge_expired();
    std::shared_lock lock(sessions_mutex);
    auto it = sessions.find(id);
    if (it == sessions.end()) throw IndexError("unknown session " + id);
    return it->second;
  }

  std::shared_ptr<CachedTranslation> translate_cached(Session& s, const std::string& design_text) {
    const MotionDesign design = parse_design(design_text);
    const std::string hash = fnv1a_hex(serialize_design(design));
    {
      std::lock_guard lock(s.cache_mutex);
      if (auto it = s.cache.find(hash); it != s.cache.end()) {
        s.latest = hash;
        return it->second;
      }
    }

    auto entry = std::make_shared<CachedTranslation>();
    entry->ctx = s.ctx;
    entry->ctx.intrinsics0 = s.intrinsics ? *s.intrinsics : design.effective_intrinsics();
    entry->ctx.validate();
    entry->translation = translate(design, entry->ctx, options.translate);

    const auto& b = entry->translation.bundle;
    json frames = json::array(), previews = json::array();
    for (int l = 0; l < b.frame_count; ++l) {
      const std::string suffix = "/" + std::to_string(l) + ".png?design=" + hash;
      frames.push_back("/sessions/" + s.id + "/bboxframe" + suffix);
      previews.push_back("/sessions/" + s.id + "/preview" + suffix);
    }
    const json body = {{"design_hash", hash},       {"manifest", manifest_json(b)},   {"tracks", tracks_to_json(b)},
                       {"boxes", boxes_to_json(b)}, {"coeffs", coeffs_to_json(b)},     {"bbox_frames", frames},
                       {"preview_frames", previews}};
    entry->body = body.dump();

    std::lock_guard lock(s.cache_mutex);
    auto [it, inserted] = s.cache.emplace(hash, entry);
    s.latest = hash;
    return it->second;
  }

  std::shared_ptr<CachedTranslation> lookup_translation(Session& s, const httplib::Request& req) {
    std::lock_guard lock(s.cache_mutex);
    const std::string hash = req.has_param("design") ? req.get_param_value("design") : s.latest;
    auto it = s.cache.find(hash);
    if (it == s.cache.end()) throw IndexError("no translation for this session/design yet");
    return it->second;
  }

  static int frame_index(const httplib::Request& req, int frame_count) {
    const int frame = std::stoi(req.matches[2].str());
    if (frame < 0 || frame >= frame_count) throw IndexError("frame " + std::to_string(frame) + " out of range");
    return frame;
  }

  template <typename Fn>
  void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      const int status = e.error_class() == ErrorClass::Lookup ? 404 : 400;
      send_error(res, status, e.kind(), e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "InternalError", e.what());
    }
  }

  void create_session(const httplib::Request& req, httplib::Response& res) {
    if (!req.is_multipart_form_data() || !req.has_file("depth"))
      throw SchemaError("POST /sessions expects multipart form data with a \"depth\" part");
    auto part_bytes = [&](const char* name) {
      const auto f = req.get_file_value(name);
      return Bytes(f.content.begin(), f.content.end());
    };
    std::optional<double> scale;
    if (req.has_file("depth_scale")) {
      try {
        scale = std::stod(req.get_file_value("depth_scale").content);
      } catch (const std::exception&) {
        throw SchemaError("depth_scale: expected a number");
      }
    }
    DepthGrid depth = decode_depth(part_bytes("depth"), scale);
    std::optional<LabelGrid> mask;
    if (req.has_file("masks")) mask = decode_png_gray(part_bytes("masks"));

    auto session = std::make_shared<Session>();
    if (req.has_file("intrinsics")) {
      json k;
      try {
        k = json::parse(req.get_file_value("intrinsics").content);
      } catch (const json::exception&) {
        throw SchemaError("intrinsics: malformed JSON");
      }
      // Reuse the design parser's field checks through a throwaway document.
      const json probe = {{"frame_count", 2},
                          {"fps", 1},
                          {"canvas", {{"width", depth.width}, {"height", depth.height}}},
                          {"intrinsics", k},
                          {"camera", {{"patterns", json::array()}}}};
      session->intrinsics = design_from_json(probe).intrinsics;
    }
    session->ctx = make_scene(std::move(depth), std::move(mask), session->intrinsics);
    if (req.has_file("image")) {
      RgbImage image = decode_png_rgb(part_bytes("image"));
      if (image.width != session->ctx.width || image.height != session->ctx.height)
        throw DimensionMismatchError("dimension mismatch: image and depth sizes differ");
      session->image = std::move(image);
    }
    session->id = new_id();
    session->created = Clock::now();
    {
      std::unique_lock lock(sessions_mutex);
      sessions[session->id] = session;
    }
    send_json(res, 201,
              {{"session_id", session->id},
               {"canvas", {{"width", session->ctx.width}, {"height", session->ctx.height}}}});
  }

  void routes() {
    server.set_payload_max_length(options.max_upload_bytes);
    if (!options.cors_origin.empty()) {
      server.set_default_headers({{"Access-Control-Allow-Origin", options.cors_origin},
                                  {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                                  {"Access-Control-Allow-Headers", "Content-Type"}});
      server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    }

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { create_session(req, res); });
    });

    server.Post(R"(/sessions/([0-9a-f]+)/translate)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto s = find(req.matches[1].str());
        const auto entry = translate_cached(*s, req.body);
        res.status = 200;
        res.set_content(entry->body, "application/json");
      });
    });

    server.Get(R"(/sessions/([0-9a-f]+)/bboxframe/(\d+)\.png)", [this](const httplib::Request& req,
                                                                       httplib::Response& res) {
      guarded(res, [&] {
        auto s = find(req.matches[1].str());
        const auto entry = lookup_translation(*s, req);
        const auto& frames = entry->translation.bundle.bbox_frames;
        const int l = frame_index(req, int(frames.size()));
        const Bytes png = encode_png_rgb(frames[std::size_t(l)]);
        res.set_content(std::string(png.begin(), png.end()), "image/png");
      });
    });

    server.Get(R"(/sessions/([0-9a-f]+)/preview/(\d+)\.png)", [this](const httplib::Request& req,
                                                                     httplib::Response& res) {
      guarded(res, [&] {
        auto s = find(req.matches[1].str());
        const auto entry = lookup_translation(*s, req);
        const int l = frame_index(req, entry->translation.bundle.frame_count);
        std::lock_guard lock(entry->frame_mutex);
        if (!entry->preview) {
          const RgbImage source = s->image ? *s->image : warp::depth_shading(entry->ctx.depth);
          entry->preview = warp::render_preview(source, entry->ctx, entry->translation.path);
        }
        const Bytes png = encode_png_rgb((*entry->preview)[std::size_t(l)]);
        res.set_content(std::string(png.begin(), png.end()), "image/png");
      });
    });

    server.Post(R"(/sessions/([0-9a-f]+)/verify)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto s = find(req.matches[1].str());
        const auto entry = translate_cached(*s, req.body);
        const auto report = verify::verify_bundle(entry->translation.bundle, parse_design(req.body), entry->ctx);
        send_json(res, 200, verify::report_to_json(report));
      });
    });

    server.Delete(R"(/sessions/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        std::unique_lock lock(sessions_mutex);
        if (sessions.erase(req.matches[1].str()) == 0) throw IndexError("unknown session " + req.matches[1].str());
        send_json(res, 200, {{"deleted", req.matches[1].str()}});
      });
    });
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Service::~Service() { stop(); }

int Service::bind() {
  if (impl_->options.port == 0) {
    impl_->bound_port = impl_->server.bind_to_any_port(impl_->options.host);
  } else {
    impl_->bound_port =
        impl_->server.bind_to_port(impl_->options.host, impl_->options.port) ? impl_->options.port : -1;
  }
  return impl_->bound_port;
}

bool Service::listen() { return impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace motionforge
