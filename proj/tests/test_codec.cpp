#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <set>

#include "motionforge/codec.hpp"
#include "motionforge/errors.hpp"
#include "oracles.hpp"

using namespace motionforge;
using namespace motionforge::codec;

namespace {

std::vector<Vec2> random_track(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> step(0, 3);
  std::vector<Vec2> t{{std::uniform_real_distribution<double>(0, 640)(rng), 100}};
  for (int l = 1; l < n; ++l) t.push_back(t.back() + Vec2(step(rng), step(rng)));
  return t;
}

double max_error(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).norm());
  return m;
}

}  // namespace

TEST(Dct, ConstantTrackHasZeroAcSlots) {
  const std::vector<Vec2> t(12, Vec2(5, 7));
  const auto c = dct_encode(t);
  EXPECT_EQ(c.slots[0], Vec2(5, 7));
  for (std::size_t k = 1; k < c.k(); ++k) EXPECT_EQ(c.slots[k], Vec2::Zero());
  EXPECT_EQ(dct_decode(c, 12), t);
}

TEST(Dct, StartIsGroundedExactly) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + int(rng() % 60);
    const auto t = random_track(rng, n);
    const int k = 1 + int(rng() % n);
    EXPECT_EQ(dct_decode(dct_encode(t, k), n)[0], t[0]);
  }
  TrajCoeffs arbitrary{{{1.5, -2.25}, {100, 3}, {-7, 0.5}}};
  EXPECT_EQ(dct_decode(arbitrary, 9)[0], Vec2(1.5, -2.25));
}

TEST(Dct, MatchesDirectOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_track(rng, 32);
    for (int k : {1, 3, 10, 32}) EXPECT_LT(max_error(dct_decode(dct_encode(t, k), 32), oracle::dct_roundtrip(t, k)), 1e-9);
  }
}

TEST(Dct, FullBasisIsLossless) {
  std::mt19937_64 rng(8);
  const auto t = random_track(rng, 20);
  EXPECT_LT(max_error(dct_decode(dct_encode(t, 20), 20), t), 1e-10);
}

std::vector<Vec2> half_period_sine(int n) {
  std::vector<Vec2> t;
  for (int l = 0; l < n; ++l) t.emplace_back(100 + 30 * std::sin(std::numbers::pi * l / (n - 1.0)), 176);
  return t;
}

// Sum of squared residual DCT coefficients left out by a K-slot encoding,
// i.e. the energy the truncation discards before re-grounding.
double truncation_energy(const std::vector<Vec2>& t, int k) {
  const auto c = dct_encode(t, int(t.size()));
  double e = 0;
  for (std::size_t j = std::size_t(k); j < c.k(); ++j) e += c.slots[j].squaredNorm();
  return e;
}

TEST(Dct, HalfPeriodSineMatchesOracle) {
  const auto t = half_period_sine(32);
  const double got = max_error(dct_decode(dct_encode(t, 10), 32), t);
  EXPECT_NEAR(got, max_error(oracle::dct_roundtrip(t, 10), t), 1e-9);
  // The sine's even extension has a slope kink at both ends, so the tail
  // decays slowly and re-grounding doubles it at the far end.
  EXPECT_NEAR(got, 1.6565, 1e-4);
  EXPECT_LT(max_error(dct_decode(dct_encode(t, 13), 32), t), 1.0);
}

TEST(Dct, GroundedErrorMonotoneForHalfPeriodSine) {
  const auto t = half_period_sine(32);
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= 32; ++k) {
    const double e = max_error(dct_decode(dct_encode(t, k), 32), t);
    EXPECT_LE(e, prev + 1e-12) << "K=" << k;
    prev = e;
  }
}

TEST(Dct, TruncationEnergyNonIncreasingInK) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = random_track(rng, 32);
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= 32; ++k) {
      const double e = truncation_energy(t, k);
      EXPECT_LE(e, prev);
      prev = e;
    }
    EXPECT_EQ(truncation_energy(t, 32), 0.0);
  }
}

TEST(Dct, GroundedErrorIsNotMonotoneInGeneral) {
  // Re-grounding subtracts the tail's value at frame 0, which can grow when
  // a coefficient is added. Pinned so a change in this behaviour is noticed.
  std::mt19937_64 rng(12);
  int rises = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = random_track(rng, 32);
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= 32; ++k) {
      const double e = max_error(dct_decode(dct_encode(t, k), 32), t);
      if (e > prev + 1e-12) ++rises;
      prev = e;
    }
  }
  EXPECT_GT(rises, 0);
}

TEST(Dct, EncodingIsLinearInResidual) {
  std::mt19937_64 rng(21);
  auto p = random_track(rng, 24), q = random_track(rng, 24);
  const Vec2 p0 = p[0], q0 = q[0];
  for (auto& v : p) v -= p0;
  for (auto& v : q) v -= q0;
  std::vector<Vec2> mix(24);
  for (int l = 0; l < 24; ++l) mix[l] = 2.5 * p[l] - 0.75 * q[l];
  const auto cp = dct_encode(p), cq = dct_encode(q), cm = dct_encode(mix);
  for (std::size_t k = 1; k < cm.k(); ++k) EXPECT_NEAR((cm.slots[k] - (2.5 * cp.slots[k] - 0.75 * cq.slots[k])).norm(), 0.0, 1e-9);
}

TEST(Dct, LinearRampMatchesFullLengthTransform) {
  std::vector<Vec2> ramp;
  for (int l = 0; l < 32; ++l) ramp.emplace_back(l, 0);
  const auto c = dct_encode(ramp);
  for (int k = 1; k < 10; ++k) {
    double want = 0;
    for (int l = 0; l < 32; ++l) want += l * std::sqrt(2.0 / 32) * std::cos(std::numbers::pi * k * (l + 0.5) / 32);
    EXPECT_NEAR(c.slots[k].x(), want, 1e-9);
  }
}

TEST(Dct, DomainErrors) {
  const std::vector<Vec2> t(4, Vec2::Zero());
  EXPECT_THROW(dct_encode(t, 5), DomainError);
  EXPECT_THROW(dct_encode(t, 0), DomainError);
  EXPECT_THROW(dct_encode(std::vector<Vec2>(1), 1), DomainError);
}

TEST(Palette, FirstColourAndDistinctness) {
  const auto c0 = palette_color(0);
  EXPECT_EQ(c0, (std::array<std::uint8_t, 3>{0, 74, 255}));
  const auto want = oracle::hue_to_rgb(222.49223594996215);
  EXPECT_EQ(int(c0[0]), want[0]);
  EXPECT_EQ(int(c0[1]), want[1]);
  EXPECT_EQ(int(c0[2]), want[2]);
  std::set<std::array<std::uint8_t, 3>> seen;
  for (int i = 0; i < 64; ++i) {
    seen.insert(palette_color(i));
    EXPECT_EQ(palette_color(i), palette_color(i));
    const double turn = (i + 1) * 0.618033988749895;
    const auto o = oracle::hue_to_rgb((turn - std::floor(turn)) * 360.0);
    const auto c = palette_color(i);
    EXPECT_EQ((std::array<int, 3>{c[0], c[1], c[2]}), o) << i;
  }
  EXPECT_EQ(seen.size(), 64u);
}

TEST(BoxPixels, HalfOpenRule) {
  const auto r = box_pixels({10, 10, 4, 4}, 100, 100);  // [8, 12) x [8, 12)
  EXPECT_EQ(r.x0, 8);
  EXPECT_EQ(r.x1, 12);
  EXPECT_EQ(r.y0, 8);
  EXPECT_EQ(r.y1, 12);
  const auto s = box_pixels({10.5, 10, 3, 1}, 100, 100);  // [9, 12) x [9.5, 10.5)
  EXPECT_EQ(s.x0, 9);
  EXPECT_EQ(s.x1, 12);
  EXPECT_EQ(s.y0, 10);
  EXPECT_EQ(s.y1, 11);
  EXPECT_TRUE(box_pixels({-10, -10, 4, 4}, 100, 100).empty());
  const auto clipped = box_pixels({0, 99, 10, 10}, 100, 100);
  EXPECT_EQ(clipped.x0, 0);
  EXPECT_EQ(clipped.y1, 100);
}

TEST(Rasterize, NoObjectsAllBlack) {
  const auto frames = rasterize_boxes({}, 3, 8, 4);
  ASSERT_EQ(frames.size(), 3u);
  for (const auto& f : frames)
    for (auto v : f.data) EXPECT_EQ(v, 0);
}

TEST(Rasterize, FullCanvasBoxIsFirstPaletteColour) {
  ScreenBoxTrack t;
  t.boxes.assign(2, BBox2D{4, 2, 8, 4});
  t.z.assign(2, 1.0);
  const std::vector<ScreenBoxTrack> tracks{t};
  for (const auto& f : rasterize_boxes(tracks, 2, 8, 4))
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 8; ++x) {
        EXPECT_EQ(f.pixel(x, y)[0], 0);
        EXPECT_EQ(f.pixel(x, y)[1], 74);
        EXPECT_EQ(f.pixel(x, y)[2], 255);
      }
}

TEST(Rasterize, LaterObjectPaintsOver) {
  ScreenBoxTrack a, b;
  a.boxes = {{3, 2, 6, 4}};
  a.z = {1};
  b.boxes = {{5, 2, 4, 4}};
  b.z = {1};
  const std::vector<ScreenBoxTrack> tracks{a, b};
  const auto frames = rasterize_boxes(tracks, 1, 8, 4);
  const auto c0 = palette_color(0), c1 = palette_color(1);
  EXPECT_EQ(frames[0].pixel(1, 1)[0], c0[0]);
  EXPECT_EQ(frames[0].pixel(4, 1)[0], c1[0]);
  EXPECT_EQ(frames[0].pixel(4, 1)[1], c1[1]);
  EXPECT_EQ(frames[0].pixel(7, 3)[2], 0);
}
