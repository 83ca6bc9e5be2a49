#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dlimit/errors.hpp"
#include "dlimit/rate_fit.hpp"

using namespace dlimit;

namespace {

std::vector<std::pair<double, double>> power_law(double c, double slope, int n) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    const double x = 0.1 * std::pow(0.5, i);
    pts.emplace_back(x, c * std::pow(x, slope));
  }
  return pts;
}

}  // namespace

TEST(RateFit, ExactPowerLaw) {
  const RateFit f = fit_rate(power_law(3.0, 1.5, 6));
  EXPECT_NEAR(f.slope, 1.5, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(3.0), 1e-11);
  EXPECT_NEAR(f.ci_low, 1.5, 1e-9);
  EXPECT_NEAR(f.ci_high, 1.5, 1e-9);
  EXPECT_EQ(f.used, 6u);
  EXPECT_FALSE(f.outlier);
}

TEST(RateFit, NoisyPowerLaw) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  auto pts = power_law(1.0, 2.0, 8);
  for (auto& p : pts) p.second *= 1.0 + noise(rng);
  const RateFit f = fit_rate(pts);
  EXPECT_NEAR(f.slope, 2.0, 0.05);
  EXPECT_LT(f.ci_low, f.slope);
  EXPECT_GT(f.ci_high, f.slope);
  EXPECT_FALSE(f.outlier);
}

TEST(RateFit, FlagsOutlier) {
  auto pts = power_law(1.0, 1.0, 6);
  pts[3].second *= 5.0;
  const RateFit f = fit_rate(pts);
  EXPECT_TRUE(f.outlier);
  EXPECT_EQ(f.outlier_index, 3u);
}

TEST(RateFit, SkipsNonPositive) {
  auto pts = power_law(1.0, 1.0, 5);
  pts[1].second = 0.0;
  pts[2].second = std::nan("");
  const RateFit f = fit_rate(pts);
  EXPECT_EQ(f.used, 3u);
  EXPECT_EQ(f.excluded.size(), 2u);
  EXPECT_FALSE(f.warnings.empty());
  EXPECT_NEAR(f.slope, 1.0, 1e-12);
}

TEST(RateFit, NeedsThreePoints) {
  EXPECT_THROW(fit_rate(power_law(1.0, 1.0, 2)), DomainError);
  auto pts = power_law(1.0, 1.0, 4);
  pts[0].second = -1.0;
  pts[1].second = 0.0;
  EXPECT_THROW(fit_rate(pts), DomainError);
}
