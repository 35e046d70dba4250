#pragma once

// Deterministic motion of the unicycle in curve-length parameterization.
//
// A SpeedRatioProfile describes mu(s), the ratio between angular and linear
// speed, together with the initial heading theta0. Everything the analytic
// modules need (the noise-free heading thetabar(s) and the noise-free pose)
// is derived from it.

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ucm {

enum class ProfileKind { constant, polynomial, table };

struct TableSample {
  double s;
  double mu;
};

class SpeedRatioProfile {
 public:
  static SpeedRatioProfile constant(double mu0, double theta0, double s_max);
  // mu(s) = sum_k coeffs[k] * s^k
  static SpeedRatioProfile polynomial(std::vector<double> coeffs, double theta0, double s_max);
  // Piecewise-linear mu through the samples. The first sample must sit at
  // s = 0 and the last one at or beyond s_max.
  static SpeedRatioProfile table(std::vector<TableSample> samples, double theta0, double s_max);

  ProfileKind kind() const noexcept { return kind_; }
  double theta0() const noexcept { return theta0_; }
  double s_max() const noexcept { return s_max_; }

  // Set only for ProfileKind::constant.
  std::optional<double> constant_mu() const noexcept;
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  const std::vector<TableSample>& samples() const noexcept { return samples_; }

  // Copy with the initial heading replaced.
  SpeedRatioProfile with_theta0(double theta0) const;

  double mu(double s) const;
  // theta0 + int_0^s mu, unwrapped.
  double heading_bar(double s) const;

  // Knots strictly inside (0, s) where mu has a kink; empty for smooth kinds.
  std::vector<double> breakpoints(double s) const;

 private:
  SpeedRatioProfile() = default;
  void check_domain(double s) const;
  double integral_mu(double s) const;

  ProfileKind kind_ = ProfileKind::constant;
  double theta0_ = 0.0;
  double s_max_ = 0.0;
  std::vector<double> coeffs_;           // constant: {mu0}; polynomial: coefficients
  std::vector<TableSample> samples_;     // table only
  std::vector<double> cumulative_;       // table only: int_0^{s_k} mu
};

struct NoiseParams {
  double k_r = 0.0;      // shift variance per unit travelled distance
  double k_theta = 0.0;  // heading variance per unit travelled distance

  void validate() const;
};

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

double heading_bar(const SpeedRatioProfile& profile, double s);

// cos[2 thetabar(s)] exp(-2 K_theta s) and the sine analogue.
double chi_c(const SpeedRatioProfile& profile, const NoiseParams& params, double s);
double chi_s(const SpeedRatioProfile& profile, const NoiseParams& params, double s);

// Noise-free pose at curve length s, starting from the origin.
Pose deterministic_pose(const SpeedRatioProfile& profile, double s);

}  // namespace ucm
