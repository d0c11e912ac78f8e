#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>

#include "motionforge/pipeline.hpp"

namespace motionforge {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8787;
  std::string cors_origin;  // empty: no CORS headers
  std::size_t max_upload_bytes = 64u * 1024u * 1024u;
  std::chrono::seconds session_ttl{3600};
  TranslateOptions translate;
};

/// HTTP API over the library with in-memory sessions.
///
///   POST   /sessions                          multipart: depth, [depth_scale], [image], [masks], [intrinsics]
///   POST   /sessions/{id}/translate           design JSON -> bundle JSON + frame URLs
///   GET    /sessions/{id}/preview/{frame}.png
///   GET    /sessions/{id}/bboxframe/{frame}.png
///   POST   /sessions/{id}/verify              design JSON -> metrics JSON
///   DELETE /sessions/{id}
///
/// Session assets never change after creation; translations are cached per
/// session by a hash of the canonical design, so repeated requests return
/// identical bodies.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds host/port (port 0 picks a free port). Returns the bound port or -1.
  int bind();
  /// Serves until stop() is called. Requires a successful bind().
  bool listen();
  void stop();
  /// Blocks until the server accepts connections (for tests and embedding).
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace motionforge
