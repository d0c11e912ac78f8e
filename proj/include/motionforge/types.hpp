#pragma once

// Domain types shared by every stage of the translation pipeline.
//
// Coordinate convention (global): +x right, +y down, +z into the scene.
// The world frame is the frame-0 camera frame, so frame 0 of every
// CameraPath is [I|0]. Pixels use integer-centred real coordinates and
// project as u = cx + fx*X/Z, v = cy + fy*Y/Z.

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace motionforge {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr int kDefaultCanvasWidth = 640;
inline constexpr int kDefaultCanvasHeight = 352;
inline constexpr double kDefaultVerticalFovDeg = 50.0;

struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  /// Throws ValidationError if focal lengths are non-positive or the
  /// principal point falls outside the canvas.
  void validate() const;

  bool operator==(const Intrinsics&) const = default;
};

/// Vertical FOV 50 degrees, principal point at the canvas centre, square pixels.
Intrinsics default_intrinsics(int width, int height);

/// World-to-camera rigid transform: X_cam = rotation * X_world + translation.
struct Extrinsics {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static Extrinsics identity() { return {}; }

  Vec3 apply(const Vec3& x) const { return rotation * x + translation; }
  Vec3 center() const { return -rotation.transpose() * translation; }
  Extrinsics inverse() const;

  bool is_exact_identity() const;
  void validate(double tol = 1e-9) const;
};

/// a ∘ b: apply b first, then a.
Extrinsics compose(const Extrinsics& a, const Extrinsics& b);

struct CameraFrame {
  Extrinsics extrinsics;
  Intrinsics intrinsics;
};

struct CameraPath {
  std::vector<CameraFrame> frames;

  std::size_t size() const { return frames.size(); }
  const CameraFrame& operator[](std::size_t i) const { return frames[i]; }

  /// Frame 0 identity, orthonormal rotations, shared canvas size.
  void validate(double tol = 1e-9) const;
};

/// Row-major raster with top-left origin.
template <typename T>
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(int w, int h, T fill = T{}) : width(w), height(h), data(std::size_t(w) * std::size_t(h), fill) {}

  T& at(int x, int y) { return data[std::size_t(y) * std::size_t(width) + std::size_t(x)]; }
  const T& at(int x, int y) const { return data[std::size_t(y) * std::size_t(width) + std::size_t(x)]; }
  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
};

using DepthGrid = Grid<float>;
using LabelGrid = Grid<std::uint16_t>;

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // width*height*3, RGB interleaved

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(std::size_t(w) * std::size_t(h) * 3, 0) {}

  std::uint8_t* pixel(int x, int y) { return &data[(std::size_t(y) * std::size_t(width) + std::size_t(x)) * 3]; }
  const std::uint8_t* pixel(int x, int y) const {
    return &data[(std::size_t(y) * std::size_t(width) + std::size_t(x)) * 3];
  }
  bool operator==(const RgbImage&) const = default;
};

struct SceneContext {
  int width = 0;
  int height = 0;
  DepthGrid depth;
  LabelGrid moving_mask;
  Intrinsics intrinsics0;

  void validate() const;
};

/// Builds a context from a depth raster; an absent mask means "all static",
/// absent intrinsics fall back to default_intrinsics.
SceneContext make_scene(DepthGrid depth, std::optional<LabelGrid> mask = std::nullopt,
                        std::optional<Intrinsics> intrinsics = std::nullopt);

/// Bilinear depth lookup, clamped to the raster edge.
double sample_depth(const DepthGrid& depth, const Vec2& pixel);

struct BBox2D {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  Vec2 center() const { return {cx, cy}; }
  bool operator==(const BBox2D&) const = default;
};

enum class PatternKind { Trucking, Pedestal, Dolly, Pan, Tilt, Roll, Zoom, Orbit, Circle, Static };

const char* pattern_name(PatternKind kind);
std::optional<PatternKind> pattern_from_name(const std::string& name);

struct PatternSpec {
  PatternKind pattern = PatternKind::Static;
  double magnitude = 0.0;
  std::optional<double> radius;

  void validate() const;
  bool operator==(const PatternSpec&) const = default;
};

struct CameraKeyframe {
  int frame = 0;
  Extrinsics pose;
  double focal_scale = 1.0;
};

using CameraSpec = std::variant<std::vector<PatternSpec>, std::vector<CameraKeyframe>>;

enum class DepthMode { MaskMean, ReferencePoint, PerspectiveConsistency };

struct TimedPixel {
  int frame = 0;
  Vec2 pixel = Vec2::Zero();
};

struct KeyBox {
  int frame = 0;
  BBox2D box;
};

struct ObjectSpec {
  int object_id = 0;
  std::vector<KeyBox> key_boxes;
  DepthMode depth_mode = DepthMode::MaskMean;
  std::vector<TimedPixel> reference_points;  // ReferencePoint mode only
};

struct LocalTrackSpec {
  std::optional<int> parent_object;
  std::vector<TimedPixel> samples;
};

struct MotionDesign {
  int frame_count = 0;
  int fps = 0;
  int canvas_width = kDefaultCanvasWidth;
  int canvas_height = kDefaultCanvasHeight;
  std::optional<Intrinsics> intrinsics;
  CameraSpec camera = std::vector<PatternSpec>{};
  std::vector<ObjectSpec> objects;
  std::vector<LocalTrackSpec> local_tracks;
  std::string text_prompt;

  /// Checks every structural invariant; messages carry a JSON path.
  void validate() const;

  /// The design's intrinsics, or the default for its canvas.
  Intrinsics effective_intrinsics() const;
};

enum class TrackKind { Camera, Local };

struct PointTrack {
  std::vector<Vec2> positions;
  std::vector<bool> visible;

  std::size_t size() const { return positions.size(); }
};

struct ScreenBoxTrack {
  std::vector<BBox2D> boxes;
  std::vector<double> z;
};

struct ObjectSignal {
  int object_id = 0;
  ScreenBoxTrack screen;
};

/// Slot 0 holds the start position verbatim; slots 1..K-1 are orthonormal
/// DCT-II coefficients of the residual (p_l - p_0).
struct TrajCoeffs {
  std::vector<Vec2> slots;

  std::size_t k() const { return slots.size(); }
};

struct SignalBundle {
  int frame_count = 0;
  int fps = 0;
  int width = 0;
  int height = 0;
  std::vector<PointTrack> camera_tracks;
  std::vector<ObjectSignal> screen_boxes;
  std::vector<PointTrack> local_tracks;
  std::vector<TrajCoeffs> traj_coeffs;  // camera tracks first, then local tracks
  std::vector<RgbImage> bbox_frames;
  std::vector<std::string> warnings;
};

}  // namespace motionforge
