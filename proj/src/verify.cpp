#include "motionforge/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "motionforge/camera.hpp"
#include "motionforge/errors.hpp"
#include "motionforge/geometry.hpp"
#include "motionforge/warp.hpp"

namespace motionforge::verify {

PoseEstimate recover_pose(std::span<const Vec3> world_points, std::span<const Vec2> pixels, const Intrinsics& k) {
  if (world_points.size() != pixels.size()) throw LengthMismatchError("recover_pose: point counts differ");
  const std::size_t n = world_points.size();
  if (n < std::size_t(kMinCorrespondences))
    throw DegenerateConfigurationError("recover_pose: need at least 6 correspondences, got " + std::to_string(n));

  // Similarity normalization of the 3D points keeps the system well conditioned.
  Vec3 centroid = Vec3::Zero();
  for (const auto& x : world_points) centroid += x;
  centroid /= double(n);
  double spread = 0.0;
  for (const auto& x : world_points) spread += (x - centroid).norm();
  spread /= double(n);
  if (!(spread > 0.0)) throw DegenerateConfigurationError("recover_pose: all world points coincide");
  const double s = std::sqrt(3.0) / spread;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(Eigen::Index(2 * n), 12);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector4d xh((world_points[i] - centroid).x() * s, (world_points[i] - centroid).y() * s,
                             (world_points[i] - centroid).z() * s, 1.0);
    const double u = (pixels[i].x() - k.cx) / k.fx;
    const double v = (pixels[i].y() - k.cy) / k.fy;
    const auto r0 = Eigen::Index(2 * i), r1 = r0 + 1;
    a.block<1, 4>(r0, 0) = xh.transpose();
    a.block<1, 4>(r0, 8) = -u * xh.transpose();
    a.block<1, 4>(r1, 4) = xh.transpose();
    a.block<1, 4>(r1, 8) = -v * xh.transpose();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() < 12 || sv(10) <= 1e-10 * sv(0))
    throw DegenerateConfigurationError("recover_pose: rank-deficient system (coplanar or collinear points?)");
  const Eigen::VectorXd p = svd.matrixV().col(11);

  Eigen::Matrix<double, 3, 4> pn;
  pn << p(0), p(1), p(2), p(3), p(4), p(5), p(6), p(7), p(8), p(9), p(10), p(11);
  // Undo the normalization: P = Pn * [sI, -s c; 0, 1].
  Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
  t.topLeftCorner<3, 3>() *= s;
  t.topRightCorner<3, 1>() = -s * centroid;
  Eigen::Matrix<double, 3, 4> proj = pn * t;

  if (proj.leftCols<3>().determinant() < 0.0) proj = -proj;
  const Mat3 m = proj.leftCols<3>();
  Eigen::JacobiSVD<Mat3> msvd(m);
  const double scale = msvd.singularValues().mean();

  PoseEstimate est;
  est.pose.rotation = nearest_rotation(m);
  est.pose.translation = proj.col(3) / scale;

  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto pr = warp::project(world_points[i], est.pose, k);
    sq += (pr.pixel - pixels[i]).squaredNorm();
  }
  est.reprojection_rms = std::sqrt(sq / double(n));
  return est;
}

namespace {

std::vector<Vec3> normalized_translations(std::vector<Vec3> ts) {
  double max_norm = 0.0;
  for (const auto& t : ts) max_norm = std::max(max_norm, t.norm());
  if (max_norm < kStaticTranslationNorm) return ts;
  for (auto& t : ts) t /= max_norm;
  return ts;
}

}  // namespace

CameraErrors camera_errors(const CameraPath& gt, std::span<const Extrinsics> est) {
  if (gt.size() != est.size()) throw LengthMismatchError("camera_errors: sequences differ in length");
  std::vector<Vec3> tg, te;
  for (std::size_t l = 0; l < gt.size(); ++l) {
    tg.push_back(gt[l].extrinsics.translation);
    te.push_back(est[l].translation);
  }
  tg = normalized_translations(std::move(tg));
  te = normalized_translations(std::move(te));

  CameraErrors err;
  for (std::size_t l = 0; l < gt.size(); ++l) {
    const Mat3& rg = gt[l].extrinsics.rotation;
    const Mat3& re = est[l].rotation;
    err.rot_err += rotation_angle(rg * re.transpose());
    err.trans_err += (tg[l] - te[l]).norm();
    Eigen::Matrix<double, 3, 4> diff;
    diff.leftCols<3>() = rg - re;
    diff.col(3) = tg[l] - te[l];
    err.cam_mc += diff.norm();
  }
  return err;
}

double obj_mc(std::span<const Vec2> generated, std::span<const Vec2> target) {
  if (generated.size() != target.size()) throw LengthMismatchError("obj_mc: tracks differ in length");
  if (generated.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t l = 0; l < generated.size(); ++l) sum += (generated[l] - target[l]).norm();
  return sum / double(generated.size());
}

Report verify_bundle(const SignalBundle& bundle, const MotionDesign& design, const SceneContext& ctx) {
  if (bundle.frame_count != design.frame_count)
    throw LengthMismatchError("verify: bundle and design disagree on frame_count");
  const CameraPath gt = camera::build_camera_path(design, ctx.intrinsics0);
  // A static camera carries no tracks; there is nothing to recover.
  const bool static_camera = is_static_path(gt);
  if (bundle.camera_tracks.empty() && !static_camera)
    throw DegenerateConfigurationError("verify: bundle has no camera tracks to recover poses from");

  std::vector<Vec3> world;
  for (const auto& t : bundle.camera_tracks) {
    if (int(t.size()) != bundle.frame_count) throw LengthMismatchError("verify: camera track length mismatch");
    world.push_back(warp::unproject(t.positions[0], sample_depth(ctx.depth, t.positions[0]), ctx.intrinsics0));
  }

  Report report;
  double sq = 0.0;
  for (std::size_t l = 0; l < gt.size() && bundle.camera_tracks.empty(); ++l)
    report.recovered.push_back(Extrinsics::identity());
  for (std::size_t l = 0; l < gt.size() && !bundle.camera_tracks.empty(); ++l) {
    std::vector<Vec3> xs;
    std::vector<Vec2> us;
    for (std::size_t i = 0; i < bundle.camera_tracks.size(); ++i) {
      if (!bundle.camera_tracks[i].visible[l]) continue;
      xs.push_back(world[i]);
      us.push_back(bundle.camera_tracks[i].positions[l]);
    }
    const auto est = recover_pose(xs, us, gt[l].intrinsics);
    report.recovered.push_back(est.pose);
    sq += est.reprojection_rms * est.reprojection_rms;
  }
  report.reproj_rms = std::sqrt(sq / double(gt.size()));
  report.camera = camera_errors(gt, report.recovered);

  const Translation fresh = translate_with_path(design, ctx, gt, TranslateOptions{0, 0, codec::kDefaultCoeffCount});
  double total = 0.0;
  std::size_t count = 0;
  if (fresh.bundle.screen_boxes.size() != bundle.screen_boxes.size() ||
      fresh.bundle.local_tracks.size() != bundle.local_tracks.size())
    throw LengthMismatchError("verify: bundle and design disagree on object or local track count");
  for (std::size_t o = 0; o < bundle.screen_boxes.size(); ++o) {
    std::vector<Vec2> got, want;
    for (const auto& b : bundle.screen_boxes[o].screen.boxes) got.push_back(b.center());
    for (const auto& b : fresh.bundle.screen_boxes[o].screen.boxes) want.push_back(b.center());
    total += obj_mc(got, want);
    ++count;
  }
  for (std::size_t i = 0; i < bundle.local_tracks.size(); ++i) {
    total += obj_mc(bundle.local_tracks[i].positions, fresh.bundle.local_tracks[i].positions);
    ++count;
  }
  report.obj_mc = count ? total / double(count) : 0.0;
  return report;
}

nlohmann::json report_to_json(const Report& r) {
  return {{"rot_err", r.camera.rot_err},
          {"trans_err", r.camera.trans_err},
          {"cam_mc", r.camera.cam_mc},
          {"obj_mc", r.obj_mc},
          {"reproj_rms", r.reproj_rms}};
}

}  // namespace motionforge::verify
