#pragma once

// <D^4> = <u^2 w^2> assembled from its six (n, l, m) contributions written
// out as explicit cosine kernels, independently of the general expansion.

#include <array>
#include <string>
#include <vector>

#include "ucm/simplex_quadrature.hpp"
#include "ucm/trajectory.hpp"

namespace ucm {

// exp(-(K_theta/2) sum_j decay[j] s_j) * cos(sum_j phase[j] thetabar(s_j)),
// j = 1..dim over the ordered simplex.
struct D4Kernel {
  std::array<int, 4> decay{};
  std::array<int, 4> phase{};
};

// weight * K_r^k_r_power * s^s_power * int_simplex sum(kernels)
struct D4Term {
  std::string label;
  double weight;
  int k_r_power;
  int s_power;
  int dim;
  std::vector<D4Kernel> kernels;  // empty when dim == 0 (integrand 1)
};

const std::vector<D4Term>& d4_terms();

struct D4TermValue {
  std::string label;
  double value;
  double err_estimate;
};

std::vector<D4TermValue> d4_term_values(const SpeedRatioProfile& profile,
                                        const NoiseParams& params, double s,
                                        const QuadratureSettings& settings = {});

double d4_moment(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                 const QuadratureSettings& settings = {});

// <D^4> - <D^2>^2. Throws CancellationError below -1e-10.
double variance_d2(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                   const QuadratureSettings& settings = {});

inline constexpr double kVarianceSlack = 1e-10;

}  // namespace ucm
