#include <gtest/gtest.h>

#include <cstring>
#include <fstream>

#include "motionforge/bundle_io.hpp"
#include "motionforge/errors.hpp"
#include "motionforge/raster_io.hpp"
#include "support.hpp"

using namespace motionforge;
namespace fs = std::filesystem;

namespace {

// Hand-built PFM so the reader is not only checked against the writer.
Bytes handmade_pfm(int w, int h, const std::vector<float>& stored_rows, bool little_endian) {
  std::string header = "Pf\n" + std::to_string(w) + " " + std::to_string(h) + "\n" + (little_endian ? "-1.0" : "1.0") + "\n";
  Bytes out(header.begin(), header.end());
  for (float v : stored_rows) {
    std::uint8_t b[4];
    std::memcpy(b, &v, 4);
    if (!little_endian) std::swap(b[0], b[3]), std::swap(b[1], b[2]);
    out.insert(out.end(), b, b + 4);
  }
  return out;
}

SignalBundle sample_bundle() {
  SignalBundle b;
  b.frame_count = 3;
  b.fps = 8;
  b.width = 16;
  b.height = 8;
  PointTrack t;
  t.positions = {{1.25, 2.5}, {1.0 / 3.0, 2.0}, {0.1, 7.7}};
  t.visible = {true, false, true};
  b.camera_tracks.push_back(t);
  PointTrack local;
  local.positions = {{4, 4}, {5, 4}, {6, 4}};
  local.visible = {true, true, true};
  b.local_tracks.push_back(local);
  b.screen_boxes.push_back({2, {{{8, 4, 4, 2}, {9, 4, 4, 2}, {10, 4, 4, 2}}, {3.0, 3.0, 3.0}}});
  b.traj_coeffs.push_back({{{1.25, 2.5}, {0.5, -0.25}}});
  b.traj_coeffs.push_back({{{4, 4}, {-1.5, 0}}});
  for (int l = 0; l < 3; ++l) {
    RgbImage f(16, 8);
    f.pixel(l, 1)[0] = 200;
    b.bbox_frames.push_back(f);
  }
  b.warnings.push_back("note");
  return b;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Pfm, ConstantRaster) {
  const DepthGrid g = decode_depth(handmade_pfm(2, 2, {1, 1, 1, 1}, true));
  EXPECT_EQ(g.width, 2);
  EXPECT_EQ(g.height, 2);
  for (float v : g.data) EXPECT_EQ(v, 1.0f);
}

TEST(Pfm, StoredBottomUp) {
  // stored rows: bottom (1, 2) then top (3, 4)
  for (bool le : {true, false}) {
    const DepthGrid g = decode_depth(handmade_pfm(2, 2, {1, 2, 3, 4}, le));
    EXPECT_EQ(g.at(0, 0), 3.0f);
    EXPECT_EQ(g.at(1, 0), 4.0f);
    EXPECT_EQ(g.at(0, 1), 1.0f);
  }
}

TEST(Pfm, WriteReadRoundTrip) {
  const DepthGrid g = fixtures::bumpy_depth(13, 7);
  const DepthGrid back = decode_depth(encode_pfm(g));
  EXPECT_EQ(back.data, g.data);
  // the top row of the decoded raster is the last row the writer stored
  const Bytes bytes = encode_pfm(g);
  float last;
  std::memcpy(&last, bytes.data() + bytes.size() - 4, 4);
  EXPECT_EQ(last, g.at(12, 0));
}

TEST(Pfm, RejectsBadInput) {
  EXPECT_THROW(decode_depth(handmade_pfm(2, 2, {1, 1, 1}, true)), FormatError);
  EXPECT_THROW(decode_depth(handmade_pfm(2, 1, {1, -1}, true)), NonPositiveDepthError);
  EXPECT_THROW(decode_depth(handmade_pfm(2, 1, {1, std::nanf("")}, true)), FormatError);
  const std::string color = "PF\n1 1\n-1.0\n";
  EXPECT_THROW(decode_depth(Bytes(color.begin(), color.end())), FormatError);
  EXPECT_THROW(decode_depth(Bytes{'x', 'y'}), FormatError);
}

TEST(Png16, ScaleConvertsUnits) {
  Grid<std::uint16_t> raw(3, 2, 1000);
  raw.at(2, 1) = 500;
  const DepthGrid g = decode_depth(encode_png_gray16(raw), 0.002);
  EXPECT_FLOAT_EQ(g.at(0, 0), 2.0f);
  EXPECT_FLOAT_EQ(g.at(2, 1), 1.0f);
  EXPECT_THROW(decode_depth(encode_png_gray16(raw)), FormatError);
  EXPECT_THROW(decode_depth(encode_png_gray16(Grid<std::uint16_t>(2, 2, 0)), 0.01), NonPositiveDepthError);
}

TEST(Png16, SidecarScaleFile) {
  const fs::path dir = fixtures::temp_dir("sidecar");
  write_png_gray16(dir / "d.png", Grid<std::uint16_t>(4, 4, 1500));
  EXPECT_THROW(load_depth(dir / "d.png"), FormatError);
  write_text_file(dir / "d.png.scale", "0.002\n");
  EXPECT_FLOAT_EQ(load_depth(dir / "d.png").at(1, 1), 3.0f);
  EXPECT_FLOAT_EQ(load_depth(dir / "d.png", 0.001).at(1, 1), 1.5f);
  fs::remove_all(dir);
}

TEST(Png, RgbRoundTrip) {
  RgbImage img(5, 3);
  for (std::size_t i = 0; i < img.data.size(); ++i) img.data[i] = std::uint8_t(i * 7);
  EXPECT_EQ(decode_png_rgb(encode_png_rgb(img)), img);
  EXPECT_EQ(encode_png_rgb(img), encode_png_rgb(img));
  EXPECT_THROW(decode_png_rgb(Bytes{1, 2, 3}), FormatError);
}

TEST(Png, GrayLabelsRoundTrip) {
  Grid<std::uint16_t> g(4, 3, 0);
  g.at(1, 2) = 7;
  g.at(3, 0) = 65535;
  EXPECT_EQ(decode_png_gray(encode_png_gray16(g)).data, g.data);
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_THROW(read_file("/nonexistent/depth.pfm"), IoError);
  EXPECT_THROW(load_depth("/nonexistent/depth.pfm"), IoError);
}

TEST(Bundle, EmptyBundleHasBlackFramesAndZeroTracks) {
  SignalBundle b;
  b.frame_count = 4;
  b.fps = 12;
  b.width = 8;
  b.height = 6;
  for (int l = 0; l < 4; ++l) b.bbox_frames.emplace_back(8, 6);
  const fs::path dir = fixtures::temp_dir("empty_bundle");
  const auto manifest = write_bundle(b, dir);
  EXPECT_EQ(manifest["track_count"], 0);
  EXPECT_EQ(manifest["frame_count"], 4);
  for (int l = 0; l < 4; ++l) {
    char name[16];
    std::snprintf(name, sizeof name, "%04d.png", l);
    const RgbImage f = read_png_rgb(dir / "bbox_frames" / name);
    for (auto v : f.data) ASSERT_EQ(v, 0);
  }
  fs::remove_all(dir);
}

TEST(Bundle, ReadBackWithinTolerance) {
  const SignalBundle b = sample_bundle();
  const fs::path dir = fixtures::temp_dir("bundle_rt");
  write_bundle(b, dir);
  const SignalBundle r = read_bundle(dir, true);
  EXPECT_EQ(r.frame_count, 3);
  ASSERT_EQ(r.camera_tracks.size(), 1u);
  ASSERT_EQ(r.local_tracks.size(), 1u);
  for (std::size_t l = 0; l < 3; ++l) {
    EXPECT_NEAR((r.camera_tracks[0].positions[l] - b.camera_tracks[0].positions[l]).norm(), 0.0, 1e-9);
    EXPECT_EQ(r.camera_tracks[0].visible[l], b.camera_tracks[0].visible[l]);
  }
  ASSERT_EQ(r.screen_boxes.size(), 1u);
  EXPECT_EQ(r.screen_boxes[0].object_id, 2);
  EXPECT_EQ(r.screen_boxes[0].screen.boxes[2], b.screen_boxes[0].screen.boxes[2]);
  ASSERT_EQ(r.traj_coeffs.size(), 2u);
  EXPECT_EQ(r.traj_coeffs[1].slots[1], b.traj_coeffs[1].slots[1]);
  EXPECT_EQ(r.bbox_frames, b.bbox_frames);
  EXPECT_EQ(r.warnings, b.warnings);
  fs::remove_all(dir);
}

TEST(Bundle, WritesAreByteIdentical) {
  const SignalBundle b = sample_bundle();
  const fs::path a = fixtures::temp_dir("bundle_a"), c = fixtures::temp_dir("bundle_c");
  write_bundle(b, a);
  write_bundle(b, c);
  // rewriting into a used directory leaves no stale frames behind
  write_bundle(b, c);
  std::vector<std::string> names_a, names_c;
  for (const auto& e : fs::recursive_directory_iterator(a)) names_a.push_back(fs::relative(e.path(), a).string());
  for (const auto& e : fs::recursive_directory_iterator(c)) names_c.push_back(fs::relative(e.path(), c).string());
  std::sort(names_a.begin(), names_a.end());
  std::sort(names_c.begin(), names_c.end());
  ASSERT_EQ(names_a, names_c);
  for (const auto& n : names_a) {
    if (!fs::is_regular_file(a / n)) continue;
    EXPECT_EQ(slurp(a / n), slurp(c / n)) << n;
  }
  fs::remove_all(a);
  fs::remove_all(c);
}

TEST(Bundle, CoefficientKinds) {
  const auto j = coeffs_to_json(sample_bundle());
  EXPECT_EQ(j[0]["kind"], "camera");
  EXPECT_EQ(j[1]["kind"], "local");
  EXPECT_EQ(j[1]["K"], 2);
}

TEST(Bundle, MissingDirectory) { EXPECT_THROW(read_bundle("/nonexistent/bundle"), IoError); }
