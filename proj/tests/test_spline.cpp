#include <gtest/gtest.h>

#include <random>

#include "motionforge/errors.hpp"
#include "motionforge/spline.hpp"
#include "oracles.hpp"

using namespace motionforge;

namespace {

Eigen::VectorXd v(std::initializer_list<double> xs) {
  Eigen::VectorXd out(Eigen::Index(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

}  // namespace

TEST(CatmullRom, PassesThroughKeysExactly) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50, 50);
  const std::vector<int> times{0, 3, 4, 9, 15};
  std::vector<Eigen::VectorXd> pts;
  for (std::size_t i = 0; i < times.size(); ++i) pts.push_back(v({u(rng), u(rng), u(rng)}));
  const CatmullRom curve(times, pts);
  const auto frames = curve.sample_frames(16);
  for (std::size_t i = 0; i < times.size(); ++i) EXPECT_EQ(frames[std::size_t(times[i])], pts[i]);
}

TEST(CatmullRom, MatchesHermiteOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> times{0};
    for (int i = 0; i < 4; ++i) times.push_back(times.back() + 1 + int(rng() % 6));
    std::vector<Eigen::VectorXd> pts;
    for (std::size_t i = 0; i < times.size(); ++i) pts.push_back(v({u(rng), u(rng)}));
    const CatmullRom curve(times, pts);
    for (double t = 0; t <= times.back(); t += 0.25)
      ASSERT_NEAR((curve.eval(t) - oracle::catmull_rom(times, pts, t)).norm(), 0.0, 1e-9) << "t=" << t;
  }
}

TEST(CatmullRom, ReproducesLinearData) {
  // equally spaced collinear keys, dense oracle = the line itself
  const std::vector<int> times{0, 5, 10};
  const CatmullRom curve(times, {v({100, 0, 1}), v({150, 10, 1.5}), v({200, 20, 2})});
  for (double t = 0; t <= 10; t += 0.125) {
    const Eigen::VectorXd want = v({100 + 10 * t, 2 * t, 1 + 0.1 * t});
    ASSERT_NEAR((curve.eval(t) - want).norm(), 0.0, 1e-9) << t;
  }
}

TEST(CatmullRom, TwoKeysGiveAStraightSegment) {
  const std::vector<int> times{0, 10};
  const auto cx = catmull_rom_scalar(times, std::vector<double>{100, 200}, 11);
  EXPECT_EQ(cx[0], 100.0);
  EXPECT_EQ(cx[10], 200.0);
  for (int l = 1; l <= 10; ++l) EXPECT_GT(cx[l], cx[l - 1]);
  for (int l = 0; l <= 10; ++l) EXPECT_NEAR(cx[l], 100.0 + 10.0 * l, 1e-9);
}

TEST(CatmullRom, RepeatedPointsHoldStill) {
  const std::vector<int> times{0, 4, 8};
  const auto xs = catmull_rom_scalar(times, std::vector<double>{5, 5, 9}, 9);
  for (int l = 0; l <= 4; ++l) EXPECT_EQ(xs[l], 5.0);
  for (double x : xs) EXPECT_TRUE(std::isfinite(x));
}

TEST(CatmullRom, HoldsValuesOutsideKeyRange) {
  const std::vector<int> times{2, 5};
  const auto xs = catmull_rom_scalar(times, std::vector<double>{1, 4}, 8);
  EXPECT_EQ(xs[0], 1.0);
  EXPECT_EQ(xs[7], 4.0);
}

TEST(CatmullRom, RejectsBadKeys) {
  const std::vector<int> one{0};
  EXPECT_THROW(CatmullRom(one, {v({1})}), ValidationError);
  const std::vector<int> unsorted{0, 4, 4};
  EXPECT_THROW(CatmullRom(unsorted, {v({1}), v({2}), v({3})}), ValidationError);
}
