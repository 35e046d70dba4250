#pragma once

// First- and second-order statistics of the Brownian unicycle.

#include <complex>

#include "ucm/simplex_quadrature.hpp"
#include "ucm/trajectory.hpp"

namespace ucm {

struct OrientationDistribution {
  double mean;      // thetabar(s)
  double variance;  // K_theta * s
};

struct SecondMoments {
  double xx;
  double yy;
  double xy;
};

struct HeadingCovariance {
  double x_theta;  // <x theta> - <x> thetabar
  double y_theta;  // <y theta> - <y> thetabar
};

OrientationDistribution orientation_distribution(const SpeedRatioProfile& profile,
                                                 const NoiseParams& params, double s);

// <x> + i <y>
std::complex<double> mean_position(const SpeedRatioProfile& profile, const NoiseParams& params,
                                   double s, const QuadratureSettings& settings = {});
double mean_x(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
              const QuadratureSettings& settings = {});
double mean_y(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
              const QuadratureSettings& settings = {});

SecondMoments second_moments(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                             const QuadratureSettings& settings = {});

// Evaluated from the K_theta-differentiated integrand of <x>, <y>.
HeadingCovariance heading_covariance(const SpeedRatioProfile& profile, const NoiseParams& params,
                                     double s, const QuadratureSettings& settings = {});
double cov_xtheta(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                  const QuadratureSettings& settings = {});
double cov_ytheta(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                  const QuadratureSettings& settings = {});

// <D^2> = <x^2 + y^2>
double mean_squared_distance(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                             const QuadratureSettings& settings = {});

}  // namespace ucm
