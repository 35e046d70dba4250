#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ucm/errors.hpp"
#include "ucm/general_moments.hpp"
#include "ucm/low_moments.hpp"

using namespace ucm;
using ucm_test::cplx;
using ucm_test::Gen;
using ucm_test::rel_diff;

namespace {
const auto kCircle = SpeedRatioProfile::constant(5.0, 0.0, 1.0);
const auto kRamp = SpeedRatioProfile::polynomial({0.0, 10.0}, 0.0, 1.0);
const NoiseParams kSmall{0.01, 0.01};
const NoiseParams kLarge{1.0, 1.0};
}  // namespace

TEST(UvMoment, ZerothOrder) {
  const auto r = uv_moment({0, 0, 0}, kRamp, kLarge, 0.8);
  EXPECT_EQ(r.value, cplx(1.0, 0.0));
  EXPECT_EQ(r.term_keys, 1);
}

TEST(UvMoment, MeanSquaredDistance) {
  const auto r = uv_moment({1, 1, 0}, kCircle, kSmall, 1.0);
  EXPECT_NEAR(r.value.real(), 0.0680, 5e-5);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-14);
  EXPECT_LT(rel_diff(r.value.real(), mean_squared_distance(kCircle, kSmall, 1.0)), 1e-12);
}

TEST(UvMoment, FourthOrderBookkeeping) {
  const auto r = uv_moment({2, 2, 0}, kRamp, kSmall, 1.0);
  EXPECT_EQ(r.term_keys, 6);
  EXPECT_EQ(r.terms_evaluated, 17);
  EXPECT_FALSE(r.cost_warning);
}

TEST(UvThetaMoment, HeadingOnly) {
  const auto two = uvtheta_moment({0, 0, 2}, kRamp, {0.3, 0.7}, 0.9);
  EXPECT_NEAR(two.value.real(), 0.7 * 0.9, 1e-14);
  EXPECT_NEAR(two.value.imag(), 0.0, 1e-14);
  const auto one = uvtheta_moment({0, 0, 1}, kRamp, {0.3, 0.7}, 0.9);
  EXPECT_NEAR(std::abs(one.value), 0.0, 1e-14);
  const auto four = uvtheta_moment({0, 0, 4}, kRamp, {0.3, 0.7}, 0.9);
  EXPECT_NEAR(four.value.real(), 3.0 * 0.63 * 0.63, 1e-13);
}

TEST(UvThetaMoment, ReducesToUvWithoutHeadingPower) {
  const auto a = uv_moment({2, 1, 0}, kRamp, kLarge, 1.0);
  const auto b = uvtheta_moment({2, 1, 0}, kRamp, kLarge, 1.0);
  EXPECT_LT(rel_diff(a.value, b.value), 1e-13);
}

TEST(UvMoment, Conjugation) {
  const auto a = uv_moment({2, 1, 0}, kRamp, kSmall, 1.0);
  const auto b = uv_moment({1, 2, 0}, kRamp, kSmall, 1.0);
  EXPECT_LT(rel_diff(a.value, std::conj(b.value)), 1e-12);
  const auto c = uvtheta_moment({1, 0, 1}, kCircle, kLarge, 1.0);
  const auto d = uvtheta_moment({0, 1, 1}, kCircle, kLarge, 1.0);
  EXPECT_LT(rel_diff(c.value, std::conj(d.value)), 1e-12);
}

TEST(UvMoment, NoiseFreeLimitIsDeterministicPower) {
  const auto pose = deterministic_pose(kRamp, 1.0);
  const cplx z(pose.x, pose.y);
  const auto r = uv_moment({3, 1, 0}, kRamp, {0.0, 0.0}, 1.0);
  EXPECT_LT(rel_diff(r.value, z * z * z * std::conj(z)), 1e-10);
}

TEST(UvMoment, EnvelopePolicy) {
  EXPECT_THROW(uv_moment({5, 4, 0}, kRamp, kSmall, 1.0), EnvelopeError);
  EXPECT_THROW(uvtheta_moment({1, 0, 5}, kRamp, kSmall, 1.0), EnvelopeError);
  const auto r = uvtheta_moment({0, 0, 6}, kRamp, {0.0, 0.5}, 1.0, {}, EnvelopePolicy::warn);
  EXPECT_TRUE(r.cost_warning);
  EXPECT_NEAR(r.value.real(), 15.0 * 0.125, 1e-12);
}

TEST(UvMoment, InvalidInput) {
  EXPECT_THROW(uv_moment({-1, 0, 0}, kRamp, kSmall, 1.0), InvalidArgument);
  EXPECT_THROW(uv_moment({1, 0, 0}, kRamp, kSmall, 2.0), DomainError);
  EXPECT_THROW(uv_moment({1, 0, 0}, kRamp, {-1.0, 0.0}, 1.0), InvalidArgument);
}

TEST(XyMoment, MatchesLowOrderModules) {
  const auto sm = second_moments(kRamp, kLarge, 1.0);
  EXPECT_LT(rel_diff(xy_moment(2, 0, 0, kRamp, kLarge, 1.0), sm.xx), 1e-10);
  EXPECT_LT(rel_diff(xy_moment(0, 2, 0, kRamp, kLarge, 1.0), sm.yy), 1e-10);
  EXPECT_LT(rel_diff(xy_moment(1, 1, 0, kRamp, kLarge, 1.0), sm.xy), 1e-10);
  const auto hc = heading_covariance(kRamp, kLarge, 1.0);
  EXPECT_LT(rel_diff(xy_moment(1, 0, 1, kRamp, kLarge, 1.0), hc.x_theta), 1e-10);
  EXPECT_LT(rel_diff(xy_moment(0, 1, 1, kRamp, kLarge, 1.0), hc.y_theta), 1e-10);
  EXPECT_LT(rel_diff(xy_moment(1, 0, 0, kRamp, kLarge, 1.0), mean_x(kRamp, kLarge, 1.0)), 1e-12);
  EXPECT_NEAR(xy_moment(0, 0, 2, kRamp, kLarge, 1.0), 1.0, 1e-13);
}

TEST(XyMoment, FourthPowersSumToD4) {
  const double x4 = xy_moment(4, 0, 0, kRamp, kLarge, 1.0);
  const double y4 = xy_moment(0, 4, 0, kRamp, kLarge, 1.0);
  const double x2y2 = xy_moment(2, 2, 0, kRamp, kLarge, 1.0);
  const auto d4 = uv_moment({2, 2, 0}, kRamp, kLarge, 1.0).value.real();
  EXPECT_LT(rel_diff(x4 + y4 + 2.0 * x2y2, d4), 1e-10);
}

// Cross-check against the moment ODE, expanding x = (u + w)/2, y = (u - w)/(2i).
TEST(XyMoment, OdeOracle) {
  const int i = 2, j = 1, k = 1;
  cplx ref(0.0, 0.0);
  for (int a = 0; a <= i; ++a) {
    for (int b = 0; b <= j; ++b) {
      const int p = a + b;
      const int q = (i - a) + (j - b);
      const double bin = std::tgamma(i + 1) / (std::tgamma(a + 1) * std::tgamma(i - a + 1)) *
                         std::tgamma(j + 1) / (std::tgamma(b + 1) * std::tgamma(j - b + 1));
      const cplx sign = std::pow(cplx(-1.0, 0.0), j - b);
      ref += bin * sign * ucm_test::ode_moment(p, q, k, kRamp, kLarge, 1.0);
    }
  }
  ref /= std::pow(2.0, i + j) * std::pow(cplx(0.0, 1.0), j);
  EXPECT_NEAR(ref.imag(), 0.0, 1e-10);
  EXPECT_LT(rel_diff(xy_moment(i, j, k, kRamp, kLarge, 1.0), ref.real()), 1e-9);
}

TEST(UvMoment, ZeroLength) {
  const auto r = uv_moment({2, 2, 0}, kRamp, kLarge, 0.0);
  EXPECT_EQ(r.value, cplx(0.0, 0.0));
  EXPECT_EQ(uv_moment({0, 0, 0}, kRamp, kLarge, 0.0).value, cplx(1.0, 0.0));
}

TEST(GeneralMomentProperty, OdeAgreementRandomOrders) {
  Gen gen(31);
  QuadratureSettings qs;
  qs.nodes_per_level = 16;
  for (int trial = 0; trial < 14; ++trial) {
    const auto profile = gen.profile(1.2);
    const auto np = gen.noise(0.8);
    const double s = gen.uniform(0.1, 1.2);
    const int p = gen.integer(0, 2);
    const int q = gen.integer(0, 3 - p);
    const int r = gen.integer(0, 2);
    const auto got = uvtheta_moment({p, q, r}, profile, np, s, qs).value;
    const auto ref = ucm_test::ode_moment(p, q, r, profile, np, s);
    const double scale = std::max(std::abs(ref), 1e-3);
    EXPECT_LT(std::abs(got - ref) / scale, 1e-7)
        << "p=" << p << " q=" << q << " r=" << r << " s=" << s << " kr=" << np.k_r
        << " kt=" << np.k_theta << " kind=" << static_cast<int>(profile.kind());
  }
}

TEST(GeneralMomentProperty, RotationCovariance) {
  Gen gen(32);
  for (int trial = 0; trial < 8; ++trial) {
    const auto profile = gen.profile(1.0);
    const auto np = gen.noise();
    const double phi = gen.uniform(-3.0, 3.0);
    const int p = gen.integer(0, 3);
    const int q = gen.integer(0, 3 - p);
    const auto a = uv_moment({p, q, 0}, profile, np, 1.0).value;
    const auto b = uv_moment({p, q, 0}, profile.with_theta0(profile.theta0() + phi), np, 1.0).value;
    EXPECT_LT(rel_diff(b, a * std::polar(1.0, phi * (p - q))), 1e-11);
  }
}

TEST(GeneralMomentProperty, ThreadCountInvariant) {
  QuadratureSettings one, four;
  four.threads = 4;
  const auto a = uv_moment({2, 2, 0}, kRamp, kLarge, 1.0, one).value;
  const auto b = uv_moment({2, 2, 0}, kRamp, kLarge, 1.0, four).value;
  EXPECT_EQ(a, b);
}
