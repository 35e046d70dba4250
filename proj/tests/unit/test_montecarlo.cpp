#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ucm/errors.hpp"
#include "ucm/montecarlo.hpp"

using namespace ucm;

namespace {
const auto kCircle = SpeedRatioProfile::constant(5.0, 0.0, 1.0);
const auto kRamp = SpeedRatioProfile::polynomial({0.0, 10.0}, 0.0, 1.0);

SimConfig config(const SpeedRatioProfile& p, NoiseParams np, std::int64_t steps,
                 std::int64_t trials, std::uint64_t seed) {
  SimConfig c{p, np};
  c.steps = steps;
  c.trials = trials;
  c.master_seed = seed;
  return c;
}
}  // namespace

TEST(MonteCarlo, NoiseFreePathMatchesDeterministicPose) {
  for (const auto* p : {&kCircle, &kRamp}) {
    const auto c = config(*p, {0.0, 0.0}, 1000000, 1, 0);
    const auto pose = simulate_trial(c, 0);
    const auto ref = deterministic_pose(*p, 1.0);
    EXPECT_NEAR(pose.x, ref.x, 1e-5);
    EXPECT_NEAR(pose.y, ref.y, 1e-5);
    EXPECT_NEAR(pose.theta, p->heading_bar(1.0), 1e-12);
  }
}

TEST(MonteCarlo, StepCountExample) {
  const auto c = config(kCircle, {0.0, 0.0}, 10000, 1, 0);
  const auto pose = simulate_trial(c, 0);
  EXPECT_NEAR(pose.x * pose.x + pose.y * pose.y, 0.0573, 1e-3);
}

TEST(MonteCarlo, DiscretizationErrorShrinks) {
  const auto ref = deterministic_pose(kRamp, 1.0);
  double prev = INFINITY;
  for (std::int64_t n : {100, 1000, 10000}) {
    const auto stats = run_experiment(config(kRamp, {1e-6, 1e-6}, n, 100, 5));
    const double dev = std::hypot(stats[Quantity::x].mean - ref.x, stats[Quantity::y].mean - ref.y);
    EXPECT_LT(dev, prev) << n;
    prev = dev;
  }
}

TEST(MonteCarlo, HeadingVariance) {
  const NoiseParams np{0.0, 0.4};
  const auto stats = run_experiment(config(kRamp, np, 10, 1000000, 9));
  const auto& th = stats[Quantity::theta2];
  ASSERT_TRUE(th.std_error.has_value());
  EXPECT_LT(std::abs(th.mean - 0.4), 4.0 * *th.std_error);
  EXPECT_LT(std::abs(stats[Quantity::theta].mean - kRamp.heading_bar(1.0)),
            4.0 * *stats[Quantity::theta].std_error);
}

TEST(MonteCarlo, RotationWithMatchedSeeds) {
  const NoiseParams np{0.3, 0.3};
  const double phi = 0.9;
  const auto a = config(kRamp, np, 2000, 5, 77);
  const auto b = config(kRamp.with_theta0(phi), np, 2000, 5, 77);
  for (std::int64_t t = 0; t < 5; ++t) {
    const auto pa = simulate_trial(a, t);
    const auto pb = simulate_trial(b, t);
    EXPECT_NEAR(pb.x, std::cos(phi) * pa.x - std::sin(phi) * pa.y, 1e-10);
    EXPECT_NEAR(pb.y, std::sin(phi) * pa.x + std::cos(phi) * pa.y, 1e-10);
    EXPECT_NEAR(pb.theta, pa.theta + phi, 1e-10);
  }
}

TEST(MonteCarlo, ThreadCountBitIdentical) {
  auto c = config(kRamp, {0.5, 0.5}, 500, 3001, 123);
  c.threads = 1;
  const auto one = run_experiment(c);
  for (int threads : {3, 4}) {
    c.threads = threads;
    const auto many = run_experiment(c);
    ASSERT_EQ(one.finals.size(), many.finals.size());
    for (std::size_t i = 0; i < one.finals.size(); ++i) {
      EXPECT_EQ(one.finals[i].x, many.finals[i].x);
      EXPECT_EQ(one.finals[i].y, many.finals[i].y);
      EXPECT_EQ(one.finals[i].theta, many.finals[i].theta);
    }
    for (std::size_t q = 0; q < kQuantityCount; ++q) {
      EXPECT_EQ(one.quantities[q].mean, many.quantities[q].mean);
      EXPECT_EQ(one.quantities[q].variance, many.quantities[q].variance);
    }
  }
}

TEST(MonteCarlo, TrialsAreIndependentOfBatch) {
  const auto c = config(kCircle, {0.2, 0.2}, 300, 10, 4);
  const auto stats = run_experiment(c);
  for (std::int64_t t = 0; t < 10; ++t) {
    const auto p = simulate_trial(c, t);
    EXPECT_EQ(p.x, stats.finals[static_cast<std::size_t>(t)].x);
  }
  auto other = c;
  other.master_seed = 5;
  EXPECT_NE(simulate_trial(other, 0).x, simulate_trial(c, 0).x);
}

TEST(MonteCarlo, PathEndsAtTrialFinal) {
  const auto c = config(kRamp, {0.1, 0.1}, 250, 3, 8);
  const auto path = simulate_path(c, 2);
  ASSERT_EQ(path.size(), 251u);
  EXPECT_EQ(path.front().s, 0.0);
  EXPECT_EQ(path.front().x, 0.0);
  EXPECT_EQ(path.front().theta, kRamp.theta0());
  const auto fin = simulate_trial(c, 2);
  EXPECT_DOUBLE_EQ(path.back().s, 1.0);
  EXPECT_EQ(path.back().x, fin.x);
  EXPECT_EQ(path.back().y, fin.y);
  EXPECT_EQ(path.back().theta, fin.theta);
}

TEST(MonteCarlo, SummaryStatistics) {
  const std::vector<Pose> finals = {{1.0, 0.0, 0.5}, {0.0, 2.0, 1.5}, {-1.0, 1.0, 1.0}};
  const auto st = summarize(finals, 1.0);
  EXPECT_EQ(st.trials_used, 3);
  EXPECT_DOUBLE_EQ(st[Quantity::x].mean, 0.0);
  EXPECT_DOUBLE_EQ(st[Quantity::d2].mean, (1.0 + 4.0 + 2.0) / 3.0);
  EXPECT_DOUBLE_EQ(*st[Quantity::x].variance, 1.0);
  EXPECT_DOUBLE_EQ(*st[Quantity::x].std_error, std::sqrt(1.0 / 3.0));
  EXPECT_DOUBLE_EQ(st[Quantity::theta2].mean, (0.25 + 0.25 + 0.0) / 3.0);
  EXPECT_DOUBLE_EQ(st[Quantity::x_theta].mean, (-0.5 + 0.0 + 0.0) / 3.0);
  const auto single = summarize(std::span<const Pose>(finals.data(), 1), 1.0);
  EXPECT_FALSE(single[Quantity::x].variance.has_value());
  EXPECT_FALSE(single[Quantity::x].std_error.has_value());
}

TEST(MonteCarlo, QuantityNames) {
  EXPECT_EQ(quantity_name(Quantity::d2), "d2");
  EXPECT_EQ(quantity_name(Quantity::theta2), "theta2");
}

TEST(MonteCarlo, InvalidConfig) {
  EXPECT_THROW(run_experiment(config(kRamp, {0.1, 0.1}, 0, 1, 0)), InvalidArgument);
  EXPECT_THROW(run_experiment(config(kRamp, {0.1, 0.1}, 10, 0, 0)), InvalidArgument);
  EXPECT_THROW(run_experiment(config(kRamp, {-0.1, 0.1}, 10, 1, 0)), InvalidArgument);
  auto far = config(kRamp, {0.1, 0.1}, 10, 1, 0);
  far.s_final = 2.0;
  EXPECT_THROW(run_experiment(far), DomainError);
  EXPECT_THROW(simulate_trial(config(kRamp, {0.1, 0.1}, 10, 2, 0), 2), DomainError);
}
