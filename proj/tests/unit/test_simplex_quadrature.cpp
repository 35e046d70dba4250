#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ucm/errors.hpp"
#include "ucm/gauss_legendre.hpp"
#include "ucm/simplex_quadrature.hpp"
#include "ucm/trajectory.hpp"

using namespace ucm;
using cplx = std::complex<double>;

namespace {

QuadratureResult ones(int dim, double s, QuadratureSettings qs = {}) {
  return integrate_ordered([](std::span<const double>) { return cplx(1.0); }, dim, s, qs);
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int order : {1, 2, 5, 24, 26}) {
    const auto& rule = gauss_legendre(order);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(order));
    for (int deg = 0; deg <= 2 * order - 1; ++deg) {
      double acc = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) acc += rule.weights[k] * std::pow(rule.nodes[k], deg);
      EXPECT_NEAR(acc, 1.0 / (deg + 1), 1e-14) << "order " << order << " degree " << deg;
    }
  }
}

TEST(SimplexQuadrature, EmptyIntegralIsOne) {
  const auto r = ones(0, 1.0);
  EXPECT_EQ(r.value, cplx(1.0));
  EXPECT_EQ(r.err_estimate, 0.0);
}

TEST(SimplexQuadrature, VolumeDim3) { EXPECT_NEAR(ones(3, 1.0).value.real(), 1.0 / 6.0, 1e-15); }

TEST(SimplexQuadrature, VolumeDim4) { EXPECT_NEAR(ones(4, 2.0).value.real(), 2.0 / 3.0, 1e-15); }

TEST(SimplexQuadrature, VolumeExactIncludingQmc) {
  for (int dim = 0; dim <= 7; ++dim) {
    for (double s : {0.5, 1.0, 2.0}) {
      QuadratureSettings qs;
      qs.nodes_per_level = 6;
      qs.qmc_samples = 4096;
      const auto r = ones(dim, s, qs);
      EXPECT_NEAR(r.value.real(), std::pow(s, dim) / factorial(dim), 1e-12) << dim;
      EXPECT_EQ(r.used_qmc, dim > qs.max_dim_deterministic);
    }
  }
}

TEST(SimplexQuadrature, ExponentialReduction) {
  // int_0^1 e^{s1} (e - e^{s1}) ds1 = e (e - 1) - (e^2 - 1)/2
  const double e = std::exp(1.0);
  const auto r = integrate_ordered(
      [](std::span<const double> p) { return cplx(std::exp(p[0] + p[1])); }, 2, 1.0, {});
  EXPECT_NEAR(r.value.real(), e * (e - 1.0) - 0.5 * (e * e - 1.0), 1e-14);
  EXPECT_LT(r.err_estimate, 1e-13);
}

TEST(SimplexQuadrature, PolynomialExactness) {
  // total degree <= 7 with 8 nodes per level
  QuadratureSettings qs;
  qs.nodes_per_level = 8;
  for (int a = 0; a <= 7; ++a) {
    for (int b = 0; b <= 7 - a; ++b) {
      const auto r = integrate_ordered(
          [a, b](std::span<const double> p) { return cplx(std::pow(p[0], a) * std::pow(p[1], b)); }, 2,
          1.0, qs);
      // int_0^1 s2^b int_0^{s2} s1^a = 1/((a+1)(a+b+2))
      EXPECT_NEAR(r.value.real(), 1.0 / ((a + 1.0) * (a + b + 2.0)), 1e-12);
    }
  }
}

TEST(SimplexQuadrature, SymmetricIntegrandTimesFactorialIsCube) {
  auto f = [](double a) { return std::cos(3.0 * a) + a * a; };
  const double cube1 = std::sin(3.0) / 3.0 + 1.0 / 3.0;  // int_0^1 f
  {
    const auto r = integrate_ordered(
        [&](std::span<const double> p) { return cplx(f(p[0]) * f(p[1])); }, 2, 1.0, {});
    EXPECT_LT(ucm_test::rel_diff(2.0 * r.value.real(), cube1 * cube1), 1e-8);
  }
  {
    const auto r = integrate_ordered(
        [&](std::span<const double> p) { return cplx(f(p[0]) * f(p[1]) * f(p[2])); }, 3, 1.0, {});
    EXPECT_LT(ucm_test::rel_diff(6.0 * r.value.real(), cube1 * cube1 * cube1), 1e-8);
  }
}

TEST(SimplexQuadrature, ErrorEstimateShrinksWithOrder) {
  const auto prof = SpeedRatioProfile::polynomial({0.0, 10.0}, 0.0, 1.0);
  auto f = [&](std::span<const double> p) {
    return std::exp(cplx(-0.5 * (p[1] - p[0]), prof.heading_bar(p[1]) - prof.heading_bar(p[0])));
  };
  double prev = 1e300;
  for (int g : {2, 4, 6, 8, 10}) {
    QuadratureSettings qs;
    qs.nodes_per_level = g;
    const auto r = integrate_ordered(f, 2, 1.0, qs);
    EXPECT_LT(r.err_estimate, prev) << g;
    prev = r.err_estimate;
  }
}

TEST(SimplexQuadrature, QmcStandardErrorCoversTruth) {
  QuadratureSettings qs;
  qs.max_dim_deterministic = 1;
  qs.qmc_samples = 1 << 14;
  const auto r = integrate_ordered(
      [](std::span<const double> p) { return cplx(std::exp(p[0] + p[1])); }, 2, 1.0, qs);
  const double e = std::exp(1.0);
  const double truth = e * (e - 1.0) - 0.5 * (e * e - 1.0);
  EXPECT_TRUE(r.used_qmc);
  EXPECT_GT(r.err_estimate, 0.0);
  EXPECT_LT(std::abs(r.value.real() - truth), 5.0 * r.err_estimate + 1e-12);
}

TEST(SimplexQuadrature, ChainMatchesGeneric) {
  const auto prof = SpeedRatioProfile::polynomial({1.0, -3.0, 4.0}, 0.4, 1.0);
  const double s = 0.9;
  auto g = [&](double t) { return prof.heading_bar(t); };
  auto factor = [](int b, const ChainNode& from, const ChainNode& to) {
    return std::exp(cplx(-0.3 * (b + 1) * (to.s - from.s), (b + 1.0) * (to.g - from.g)));
  };
  auto leaf = [](ChainPoint) { return cplx(1.0); };
  const auto chain = integrate_chain(g, factor, leaf, 3, s, {});
  const auto flat = integrate_ordered(
      [&](std::span<const double> p) {
        cplx acc(1.0);
        double prev_s = 0.0, prev_g = prof.heading_bar(0.0);
        for (int b = 0; b < 3; ++b) {
          const double gi = prof.heading_bar(p[static_cast<std::size_t>(b)]);
          acc *= std::exp(cplx(-0.3 * (b + 1) * (p[static_cast<std::size_t>(b)] - prev_s),
                               (b + 1.0) * (gi - prev_g)));
          prev_s = p[static_cast<std::size_t>(b)];
          prev_g = gi;
        }
        return acc;
      },
      3, s, {});
  EXPECT_LT(ucm_test::rel_diff(chain.value, flat.value), 1e-13);
}

TEST(SimplexQuadrature, ThreadCountDoesNotChangeBits) {
  auto f = [](std::span<const double> p) { return std::exp(cplx(-p[0], 3.0 * p[1] - p[2])); };
  QuadratureSettings one, four;
  four.threads = 4;
  const auto a = integrate_ordered(f, 3, 1.0, one);
  const auto b = integrate_ordered(f, 3, 1.0, four);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.err_estimate, b.err_estimate);
}

TEST(SimplexQuadrature, NonFiniteIntegrandReportsPoint) {
  try {
    integrate_ordered([](std::span<const double> p) { return cplx(1.0 / (p[0] - p[0])); }, 1,
                      1.0, {});
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("ordered point"), std::string::npos) << e.what();
  }
}

TEST(SimplexQuadrature, InvalidSettingsThrow) {
  QuadratureSettings qs;
  qs.nodes_per_level = 1;
  EXPECT_THROW(ones(2, 1.0, qs), InvalidArgument);
  qs = {};
  qs.rel_tol = 0.0;
  EXPECT_THROW(ones(2, 1.0, qs), InvalidArgument);
  EXPECT_THROW(ones(-1, 1.0), InvalidArgument);
}

TEST(SimplexQuadrature, BreaksRestoreAccuracyOnKinks) {
  const double c = 0.37, s = 1.1;
  auto g = [](double t) { return t; };
  auto factor = [](int, const ChainNode&, const ChainNode&) { return cplx(1.0); };
  auto leaf = [c](ChainPoint pt) { return cplx(std::abs(pt[1].g - c) * std::abs(pt[2].g - c)); };
  const double one = 0.5 * (c * c + (s - c) * (s - c));
  const double exact = 0.5 * one * one;
  const double knots[] = {c};
  const auto split = integrate_chain(g, factor, leaf, 2, s, {}, knots);
  const auto plain = integrate_chain(g, factor, leaf, 2, s, {});
  EXPECT_LT(std::abs(split.value.real() - exact) / exact, 1e-14);
  EXPECT_GT(std::abs(plain.value.real() - exact) / exact, 1e-8);
  // Knots outside (0, s) are ignored.
  const double outside[] = {0.0, 2.0};
  EXPECT_EQ(integrate_chain(g, factor, leaf, 2, s, {}, outside).value, plain.value);
}
