#pragma once

// Closed forms for a constant speed ratio mu(s) = mu0, where the heading is
// linear in s and every moment integral reduces to nested complex
// exponentials.

#include <complex>
#include <span>
#include <vector>

#include "ucm/exp_poly.hpp"
#include "ucm/trajectory.hpp"

namespace ucm {

struct ComplexRate {
  std::complex<double> value;

  explicit ComplexRate(std::complex<double> v);
};

// z = -K_theta/2 + i mu0
ComplexRate base_rate(double mu0, const NoiseParams& params);

// z, -3 K_theta/2 + i mu0, -2 K_theta + 2 i mu0
std::vector<ComplexRate> d4_reference_rates(double mu0, const NoiseParams& params);

// int over 0 < s_1 < ... < s_d < t of prod_b exp(rates[b] (s_{b+1} - s_b)),
// s_0 = 0, as a function of t, exact for t in [0, horizon].
ExpPolySum ordered_exponential_chain(std::span<const std::complex<double>> rates, double horizon);

double d2_constmu(double mu0, const NoiseParams& params, double s);

double d4_constmu(double mu0, const NoiseParams& params, double s);

// d4_constmu - d2_constmu^2
double variance_d2_constmu(double mu0, const NoiseParams& params, double s);

// <x> + i <y>
std::complex<double> mean_pose_constmu(double mu0, const NoiseParams& params, double theta0,
                                       double s);

// Distinct non-zero rates appearing in the assembled <D^4> expression,
// conjugate pairs folded onto the representative with Im >= 0.
std::vector<std::complex<double>> d4_constmu_rates(double mu0, const NoiseParams& params,
                                                   double s);

// |z s| below this switches to the power series.
inline constexpr double kSeriesSwitch = 1e-4;

}  // namespace ucm
