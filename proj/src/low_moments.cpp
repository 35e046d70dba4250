#include "ucm/low_moments.hpp"

#include <cmath>

namespace ucm {
namespace {

using cplx = std::complex<double>;

struct Heading {
  const SpeedRatioProfile& profile;
  double operator()(double s) const { return profile.heading_bar(s); }
};

cplx unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// int_0^s ds' int_0^{s-s'} ds'' e^{-K_theta s''/2} leaf(s', thetabar(s'), Delta)
// with Delta = thetabar(s'+s'') - thetabar(s'), as an ordered integral over
// s_1 = s', s_2 = s' + s''.
template <class Leaf>
cplx shifted_double_integral(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                             const QuadratureSettings& settings, Leaf leaf) {
  const double kt = params.k_theta;
  auto factor = [kt](int b, const ChainNode& from, const ChainNode& to) -> cplx {
    if (b == 0) return 1.0;
    return std::exp(-0.5 * kt * (to.s - from.s));
  };
  auto closing = [&leaf](ChainPoint pt) -> cplx {
    return leaf(pt[1].s, pt[1].g, pt[2].g - pt[1].g);
  };
  const auto breaks = profile.breakpoints(s);
  return integrate_chain(Heading{profile}, factor, closing, 2, s, settings, breaks).value;
}

}  // namespace

OrientationDistribution orientation_distribution(const SpeedRatioProfile& profile,
                                                 const NoiseParams& params, double s) {
  params.validate();
  return {profile.heading_bar(s), params.k_theta * s};
}

std::complex<double> mean_position(const SpeedRatioProfile& profile, const NoiseParams& params,
                                   double s, const QuadratureSettings& settings) {
  params.validate();
  profile.heading_bar(s);
  const double kt = params.k_theta;
  auto factor = [](int, const ChainNode&, const ChainNode&) { return cplx(1.0); };
  auto leaf = [kt](ChainPoint pt) { return unit(pt[1].g) * std::exp(-0.5 * kt * pt[1].s); };
  const auto breaks = profile.breakpoints(s);
  return integrate_chain(Heading{profile}, factor, leaf, 1, s, settings, breaks).value;
}

double mean_x(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
              const QuadratureSettings& settings) {
  return mean_position(profile, params, s, settings).real();
}

double mean_y(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
              const QuadratureSettings& settings) {
  return mean_position(profile, params, s, settings).imag();
}

SecondMoments second_moments(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                             const QuadratureSettings& settings) {
  params.validate();
  profile.heading_bar(s);
  const double kt = params.k_theta;
  auto chi = [kt](double s1, double th1) {
    const double decay = std::exp(-2.0 * kt * s1);
    return std::pair{std::cos(2.0 * th1) * decay, std::sin(2.0 * th1) * decay};
  };

  // real part feeds <x^2>, imaginary part <y^2>
  const cplx diag = shifted_double_integral(
      profile, params, s, settings, [&chi](double s1, double th1, double delta) {
        const auto [cc, cs] = chi(s1, th1);
        const double c = std::cos(delta);
        const double sn = std::sin(delta);
        return cplx((1.0 + cc) * c - cs * sn, (1.0 - cc) * c + cs * sn);
      });
  const cplx cross = shifted_double_integral(
      profile, params, s, settings, [&chi](double s1, double th1, double delta) {
        const auto [cc, cs] = chi(s1, th1);
        return cplx(cs * std::cos(delta) + cc * std::sin(delta), 0.0);
      });

  // int_0^s (chi_c + i chi_s)
  auto one = [](int, const ChainNode&, const ChainNode&) { return cplx(1.0); };
  auto chi_leaf = [&chi](ChainPoint pt) {
    const auto [cc, cs] = chi(pt[1].s, pt[1].g);
    return cplx(cc, cs);
  };
  const auto breaks = profile.breakpoints(s);
  const cplx chi_int =
      integrate_chain(Heading{profile}, one, chi_leaf, 1, s, settings, breaks).value;

  const double half_kr = 0.5 * params.k_r;
  return {diag.real() + half_kr * (s + chi_int.real()),
          diag.imag() + half_kr * (s - chi_int.real()),
          cross.real() + half_kr * chi_int.imag()};
}

HeadingCovariance heading_covariance(const SpeedRatioProfile& profile, const NoiseParams& params,
                                     double s, const QuadratureSettings& settings) {
  params.validate();
  profile.heading_bar(s);
  const double kt = params.k_theta;
  if (kt == 0.0) return {0.0, 0.0};
  // d/dK_theta of e^{-K_theta s'/2} brings down -s'/2; times 2 K_theta.
  auto factor = [](int, const ChainNode&, const ChainNode&) { return cplx(1.0); };
  auto leaf = [kt](ChainPoint pt) {
    return pt[1].s * unit(pt[1].g) * std::exp(-0.5 * kt * pt[1].s);
  };
  const auto breaks = profile.breakpoints(s);
  const cplx w = integrate_chain(Heading{profile}, factor, leaf, 1, s, settings, breaks).value;
  return {-kt * w.imag(), kt * w.real()};
}

double cov_xtheta(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                  const QuadratureSettings& settings) {
  return heading_covariance(profile, params, s, settings).x_theta;
}

double cov_ytheta(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                  const QuadratureSettings& settings) {
  return heading_covariance(profile, params, s, settings).y_theta;
}

double mean_squared_distance(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                             const QuadratureSettings& settings) {
  params.validate();
  profile.heading_bar(s);
  const cplx inner = shifted_double_integral(
      profile, params, s, settings,
      [](double, double, double delta) { return cplx(std::cos(delta), 0.0); });
  return params.k_r * s + 2.0 * inner.real();
}

}  // namespace ucm
