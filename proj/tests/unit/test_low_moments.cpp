#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ucm/general_moments.hpp"
#include "ucm/low_moments.hpp"

using namespace ucm;
using ucm_test::cplx;
using ucm_test::Gen;
using ucm_test::rel_diff;

namespace {
const auto kCircle = SpeedRatioProfile::constant(5.0, 0.0, 1.0);
const auto kRamp = SpeedRatioProfile::polynomial({0.0, 10.0}, 0.0, 1.0);
}  // namespace

TEST(Orientation, Gaussian) {
  const auto d = orientation_distribution(kCircle, {0.0, 1.0}, 1.0);
  EXPECT_DOUBLE_EQ(d.mean, 5.0);
  EXPECT_DOUBLE_EQ(d.variance, 1.0);
  EXPECT_EQ(orientation_distribution(kRamp, {1.0, 0.0}, 0.7).variance, 0.0);
  const auto r = orientation_distribution(kRamp.with_theta0(0.2), {0.01, 0.01}, 1.0);
  EXPECT_NEAR(r.mean, 5.2, 1e-15);
  EXPECT_NEAR(r.variance, 0.01, 1e-18);
}

TEST(MeanPosition, StraightLine) {
  const auto p = SpeedRatioProfile::constant(0.0, 0.0, 1.0);
  EXPECT_NEAR(mean_x(p, {0.0, 0.0}, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(mean_y(p, {0.0, 0.0}, 1.0), 0.0, 1e-15);
}

TEST(MeanPosition, DecayOnly) {
  const auto p = SpeedRatioProfile::constant(0.0, 0.0, 1.0);
  EXPECT_NEAR(mean_x(p, {0.0, 2.0}, 1.0), 1.0 - std::exp(-1.0), 1e-15);
}

TEST(MeanPosition, ConstantRatioAntiderivative) {
  for (double kt : {0.0, 0.01, 1.0}) {
    const cplx z(-0.5 * kt, 5.0);
    const cplx expect = (std::exp(z) - 1.0) / z;
    EXPECT_LT(rel_diff(mean_position(kCircle, {0.3, kt}, 1.0), expect), 1e-10);
  }
}

TEST(SecondMoments, StraightLine) {
  const auto m = second_moments(SpeedRatioProfile::constant(0.0, 0.0, 1.0), {0.0, 0.0}, 1.0);
  EXPECT_NEAR(m.xx, 1.0, 1e-14);
  EXPECT_NEAR(m.yy, 0.0, 1e-14);
  EXPECT_NEAR(m.xy, 0.0, 1e-14);
}

TEST(SecondMoments, TraceReferenceValue) {
  const auto m = second_moments(kCircle, {0.01, 0.01}, 1.0);
  EXPECT_NEAR(m.xx + m.yy, 0.0680, 5e-5);
}

TEST(SecondMoments, MatchOdeOracle) {
  const NoiseParams np{0.4, 0.7};
  const auto m = second_moments(kRamp, np, 1.0);
  const cplx uw = ucm_test::ode_moment(1, 1, 0, kRamp, np, 1.0);
  const cplx uu = ucm_test::ode_moment(2, 0, 0, kRamp, np, 1.0);
  // x^2 = (Z Zbar + Re Z^2)/2, y^2 = (Z Zbar - Re Z^2)/2, xy = Im Z^2 / 2
  EXPECT_LT(rel_diff(m.xx, 0.5 * (uw.real() + uu.real())), 1e-10);
  EXPECT_LT(rel_diff(m.yy, 0.5 * (uw.real() - uu.real())), 1e-10);
  EXPECT_LT(rel_diff(m.xy, 0.5 * uu.imag()), 1e-10);
}

TEST(HeadingCovariance, VanishesWithoutHeadingNoise) {
  const auto h = heading_covariance(kCircle, {1.0, 0.0}, 1.0);
  EXPECT_EQ(h.x_theta, 0.0);
  EXPECT_EQ(h.y_theta, 0.0);
}

TEST(HeadingCovariance, StraightLineHasNoXCorrelation) {
  const auto p = SpeedRatioProfile::constant(0.0, 0.0, 3.0);
  for (double s : {0.5, 3.0}) {
    for (double k : {0.1, 2.0}) EXPECT_NEAR(cov_xtheta(p, {k, k}, s), 0.0, 1e-15);
  }
}

TEST(HeadingCovariance, FiniteDifferenceOracle) {
  const double kt = 0.01, h = 1e-6;
  const double fd_y = 2.0 * kt *
                      (mean_y(kCircle, {0.01, kt + h}, 1.0) - mean_y(kCircle, {0.01, kt - h}, 1.0)) /
                      (2.0 * h);
  const double fd_x = 2.0 * kt *
                      (mean_x(kCircle, {0.01, kt + h}, 1.0) - mean_x(kCircle, {0.01, kt - h}, 1.0)) /
                      (2.0 * h);
  // sigma_x theta = 2 K_theta d<y>/dK_theta, sigma_y theta = -2 K_theta d<x>/dK_theta
  EXPECT_LT(rel_diff(cov_xtheta(kCircle, {0.01, kt}, 1.0), fd_y), 1e-5);
  EXPECT_LT(rel_diff(cov_ytheta(kCircle, {0.01, kt}, 1.0), -fd_x), 1e-5);
}

TEST(HeadingCovariance, MatchOdeOracle) {
  const NoiseParams np{0.2, 0.9};
  const cplx ref = ucm_test::ode_moment(1, 0, 1, kRamp, np, 1.0);
  const auto h = heading_covariance(kRamp, np, 1.0);
  EXPECT_LT(rel_diff(cplx(h.x_theta, h.y_theta), ref), 1e-10);
}

TEST(MeanSquaredDistance, ReferenceValues) {
  EXPECT_NEAR(mean_squared_distance(kCircle, {0.01, 0.01}, 1.0), 0.0680, 5e-5);
  EXPECT_NEAR(mean_squared_distance(kRamp, {1.0, 1.0}, 1.0), 1.1443, 5e-4);
}

TEST(MeanSquaredDistance, StraightLineNoNoise) {
  const auto p = SpeedRatioProfile::constant(0.0, 0.0, 4.0);
  for (double s : {0.5, 1.0, 4.0}) EXPECT_NEAR(mean_squared_distance(p, {0, 0}, s), s * s, 1e-13 * s * s);
}

TEST(LowMomentProperties, TraceEqualsMeanSquaredDistance) {
  Gen gen(21);
  for (int t = 0; t < 25; ++t) {
    const auto p = gen.profile();
    const auto np = gen.noise();
    const double s = gen.uniform(0.05, 1.5);
    const auto m = second_moments(p, np, s);
    EXPECT_LT(rel_diff(m.xx + m.yy, mean_squared_distance(p, np, s)), 1e-10);
  }
}

TEST(LowMomentProperties, RotationCovariance) {
  Gen gen(22);
  for (int t = 0; t < 20; ++t) {
    const auto p = gen.profile();
    const auto np = gen.noise();
    const double s = gen.uniform(0.05, 1.5);
    const double phi = gen.uniform(-3.0, 3.0);
    const auto q = p.with_theta0(p.theta0() + phi);
    const double c = std::cos(phi), sn = std::sin(phi);
    const cplx m0 = mean_position(p, np, s), m1 = mean_position(q, np, s);
    EXPECT_LT(std::abs(m1 - std::polar(1.0, phi) * m0), 1e-10 * std::max(1.0, std::abs(m0)));
    const auto a = second_moments(p, np, s), b = second_moments(q, np, s);
    // R M R^T
    const double xx = c * c * a.xx - 2 * c * sn * a.xy + sn * sn * a.yy;
    const double yy = sn * sn * a.xx + 2 * c * sn * a.xy + c * c * a.yy;
    const double xy = c * sn * (a.xx - a.yy) + (c * c - sn * sn) * a.xy;
    const double scale = std::max(1.0, a.xx + a.yy);
    EXPECT_NEAR(b.xx, xx, 1e-10 * scale);
    EXPECT_NEAR(b.yy, yy, 1e-10 * scale);
    EXPECT_NEAR(b.xy, xy, 1e-10 * scale);
    EXPECT_LT(rel_diff(mean_squared_distance(p, np, s), mean_squared_distance(q, np, s)), 1e-10);
  }
}

TEST(LowMomentProperties, AgreeWithGeneralExpansion) {
  Gen gen(23);
  for (int t = 0; t < 15; ++t) {
    const auto p = gen.profile();
    const auto np = gen.noise();
    const double s = gen.uniform(0.05, 1.5);
    EXPECT_LT(rel_diff(mean_position(p, np, s), uv_moment({1, 0, 0}, p, np, s).value), 1e-8);
    const auto m = second_moments(p, np, s);
    EXPECT_LT(rel_diff(cplx(m.xx - m.yy, 2 * m.xy), uv_moment({2, 0, 0}, p, np, s).value), 1e-8);
    EXPECT_LT(rel_diff(mean_squared_distance(p, np, s), uv_moment({1, 1, 0}, p, np, s).value.real()),
              1e-8);
    const auto h = heading_covariance(p, np, s);
    if (np.k_theta > 0.0) {
      EXPECT_LT(rel_diff(cplx(h.x_theta, h.y_theta), uvtheta_moment({1, 0, 1}, p, np, s).value),
                1e-8);
    }
  }
}

TEST(LowMomentProperties, MatchOdeOracleOnRandomProfiles) {
  Gen gen(24);
  for (int t = 0; t < 10; ++t) {
    const auto p = gen.profile();
    const auto np = gen.noise();
    const double s = gen.uniform(0.05, 1.5);
    SCOPED_TRACE(testing::Message() << "kind=" << static_cast<int>(p.kind()) << " s=" << s
                                    << " kr=" << np.k_r << " kt=" << np.k_theta);
    EXPECT_LT(rel_diff(mean_position(p, np, s), ucm_test::ode_moment(1, 0, 0, p, np, s)), 1e-9);
    EXPECT_LT(rel_diff(mean_squared_distance(p, np, s), ucm_test::ode_moment(1, 1, 0, p, np, s).real()),
              1e-9);
  }
}
