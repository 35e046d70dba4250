#pragma once

// Discrete-step simulation of the noisy unicycle.
//
// The interval (0, s_final) is cut into N equal steps of length ds. Step j
// draws the heading increment first, then the shift noise:
//   theta_j = thetabar(j ds) + sum_{m <= j} dtheta_m,   dtheta ~ N(0, K_theta ds)
//   x += (ds + eps_j) cos theta_j,  y += (ds + eps_j) sin theta_j,  eps ~ N(0, K_r ds)
// Draws for (trial, step) come from a Philox counter keyed by master_seed, so
// every trial is reproducible on its own.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ucm/trajectory.hpp"

namespace ucm {

struct SimConfig {
  SpeedRatioProfile profile;
  NoiseParams params;
  double s_final = 1.0;
  std::int64_t steps = 10000;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 0;
  int threads = 1;

  void validate() const;
};

struct PathSample {
  double s;
  double x;
  double y;
  double theta;
};

Pose simulate_trial(const SimConfig& config, std::int64_t trial_index);

// steps + 1 samples, starting at the origin.
std::vector<PathSample> simulate_path(const SimConfig& config, std::int64_t trial_index);

enum class Quantity {
  x,
  y,
  theta,
  d2,
  d4,
  xx,
  yy,
  xy,
  x_theta,   // x * theta~
  y_theta,   // y * theta~
  theta2,    // theta~^2
};
inline constexpr std::size_t kQuantityCount = 11;

std::string_view quantity_name(Quantity q);

struct QuantityStats {
  double mean = 0.0;
  std::optional<double> variance;      // sample variance, n - 1 denominator
  std::optional<double> std_error;     // sqrt(variance / n)
  std::optional<double> variance_se;   // sqrt((m4 - m2^2) / n), central moments
};

struct TrialStatistics {
  std::int64_t trials_used = 0;
  std::array<QuantityStats, kQuantityCount> quantities{};
  std::vector<Pose> finals;  // per-trial final poses, in trial order

  const QuantityStats& operator[](Quantity q) const {
    return quantities[static_cast<std::size_t>(q)];
  }
};

// Statistics over the given finals; theta~ is taken
// relative to theta_bar_final.
TrialStatistics summarize(std::span<const Pose> finals, double theta_bar_final);

TrialStatistics run_experiment(const SimConfig& config);

}  // namespace ucm
