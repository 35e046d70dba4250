#include "ucm/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "ucm/errors.hpp"
#include "ucm/gauss_legendre.hpp"

namespace ucm {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

// sin(x)/x, accurate near zero.
double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

constexpr int kPoseNodes = 20;

}  // namespace

SpeedRatioProfile SpeedRatioProfile::constant(double mu0, double theta0, double s_max) {
  require_finite(mu0, "mu0");
  require_finite(theta0, "theta0");
  if (!(s_max > 0.0) || !std::isfinite(s_max)) throw InvalidArgument("s_max must be positive");
  SpeedRatioProfile p;
  p.kind_ = ProfileKind::constant;
  p.theta0_ = theta0;
  p.s_max_ = s_max;
  p.coeffs_ = {mu0};
  return p;
}

SpeedRatioProfile SpeedRatioProfile::polynomial(std::vector<double> coeffs, double theta0,
                                                double s_max) {
  if (coeffs.empty()) throw InvalidArgument("polynomial profile needs at least one coefficient");
  for (double c : coeffs) require_finite(c, "polynomial coefficient");
  require_finite(theta0, "theta0");
  if (!(s_max > 0.0) || !std::isfinite(s_max)) throw InvalidArgument("s_max must be positive");
  SpeedRatioProfile p;
  p.kind_ = ProfileKind::polynomial;
  p.theta0_ = theta0;
  p.s_max_ = s_max;
  p.coeffs_ = std::move(coeffs);
  return p;
}

SpeedRatioProfile SpeedRatioProfile::table(std::vector<TableSample> samples, double theta0,
                                           double s_max) {
  if (samples.size() < 2) throw InvalidArgument("table profile needs at least two samples");
  require_finite(theta0, "theta0");
  if (!(s_max > 0.0) || !std::isfinite(s_max)) throw InvalidArgument("s_max must be positive");
  for (const auto& smp : samples) {
    require_finite(smp.s, "table sample s");
    require_finite(smp.mu, "table sample mu");
  }
  for (std::size_t k = 1; k < samples.size(); ++k) {
    if (!(samples[k].s > samples[k - 1].s))
      throw InvalidArgument("table samples must be strictly increasing in s");
  }
  if (samples.front().s != 0.0) throw InvalidArgument("table must start at s = 0");
  if (samples.back().s < s_max) throw InvalidArgument("table must cover [0, s_max]");

  SpeedRatioProfile p;
  p.kind_ = ProfileKind::table;
  p.theta0_ = theta0;
  p.s_max_ = s_max;
  p.samples_ = std::move(samples);
  p.cumulative_.resize(p.samples_.size());
  p.cumulative_[0] = 0.0;
  for (std::size_t k = 1; k < p.samples_.size(); ++k) {
    const auto& a = p.samples_[k - 1];
    const auto& b = p.samples_[k];
    p.cumulative_[k] = p.cumulative_[k - 1] + 0.5 * (a.mu + b.mu) * (b.s - a.s);
  }
  return p;
}

std::optional<double> SpeedRatioProfile::constant_mu() const noexcept {
  if (kind_ == ProfileKind::constant) return coeffs_.front();
  return std::nullopt;
}

SpeedRatioProfile SpeedRatioProfile::with_theta0(double theta0) const {
  require_finite(theta0, "theta0");
  SpeedRatioProfile copy = *this;
  copy.theta0_ = theta0;
  return copy;
}

void SpeedRatioProfile::check_domain(double s) const {
  if (!(s >= 0.0 && s <= s_max_)) {
    std::ostringstream os;
    os << "curve length " << s << " outside [0, " << s_max_ << "]";
    throw DomainError(os.str());
  }
}

double SpeedRatioProfile::mu(double s) const {
  check_domain(s);
  switch (kind_) {
    case ProfileKind::constant:
      return coeffs_.front();
    case ProfileKind::polynomial: {
      double acc = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
      return acc;
    }
    case ProfileKind::table: {
      auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                                 [](double v, const TableSample& smp) { return v < smp.s; });
      std::size_t k = static_cast<std::size_t>(it - samples_.begin());
      if (k >= samples_.size()) k = samples_.size() - 1;
      const auto& a = samples_[k - 1];
      const auto& b = samples_[k];
      const double t = (s - a.s) / (b.s - a.s);
      return a.mu + t * (b.mu - a.mu);
    }
  }
  return 0.0;
}

double SpeedRatioProfile::integral_mu(double s) const {
  switch (kind_) {
    case ProfileKind::constant:
      return coeffs_.front() * s;
    case ProfileKind::polynomial: {
      // int_0^s sum c_k t^k = sum c_k s^{k+1}/(k+1), Horner in s
      double acc = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 0;) {
        acc = acc * s + coeffs_[k] / static_cast<double>(k + 1);
      }
      return acc * s;
    }
    case ProfileKind::table: {
      auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                                 [](double v, const TableSample& smp) { return v < smp.s; });
      std::size_t k = static_cast<std::size_t>(it - samples_.begin());
      if (k >= samples_.size()) k = samples_.size() - 1;
      const auto& a = samples_[k - 1];
      const auto& b = samples_[k];
      const double h = s - a.s;
      const double slope = (b.mu - a.mu) / (b.s - a.s);
      return cumulative_[k - 1] + a.mu * h + 0.5 * slope * h * h;
    }
  }
  return 0.0;
}

double SpeedRatioProfile::heading_bar(double s) const {
  check_domain(s);
  if (s == 0.0) return theta0_;
  return theta0_ + integral_mu(s);
}

std::vector<double> SpeedRatioProfile::breakpoints(double s) const {
  std::vector<double> out;
  if (kind_ != ProfileKind::table) return out;
  for (const auto& smp : samples_) {
    if (smp.s > 0.0 && smp.s < s) out.push_back(smp.s);
  }
  return out;
}

void NoiseParams::validate() const {
  if (!(k_r >= 0.0) || !std::isfinite(k_r)) throw InvalidArgument("k_r must be finite and >= 0");
  if (!(k_theta >= 0.0) || !std::isfinite(k_theta))
    throw InvalidArgument("k_theta must be finite and >= 0");
}

double heading_bar(const SpeedRatioProfile& profile, double s) { return profile.heading_bar(s); }

double chi_c(const SpeedRatioProfile& profile, const NoiseParams& params, double s) {
  params.validate();
  return std::cos(2.0 * profile.heading_bar(s)) * std::exp(-2.0 * params.k_theta * s);
}

double chi_s(const SpeedRatioProfile& profile, const NoiseParams& params, double s) {
  params.validate();
  return std::sin(2.0 * profile.heading_bar(s)) * std::exp(-2.0 * params.k_theta * s);
}

Pose deterministic_pose(const SpeedRatioProfile& profile, double s) {
  const double theta = profile.heading_bar(s);
  if (const auto mu0 = profile.constant_mu()) {
    // e^{i theta0} (e^{i mu0 s} - 1)/(i mu0) = e^{i (theta0 + mu0 s/2)} s sinc(mu0 s/2)
    const double half = 0.5 * (*mu0) * s;
    const double chord = s * sinc(half);
    const double dir = profile.theta0() + half;
    return {chord * std::cos(dir), chord * std::sin(dir), theta};
  }
  if (s == 0.0) return {0.0, 0.0, theta};

  // Composite Gauss-Legendre on panels aligned to the profile's kinks, each
  // segment split so that the heading turns by at most ~0.25 rad per panel.
  std::vector<double> edges{0.0};
  for (double b : profile.breakpoints(s)) edges.push_back(b);
  edges.push_back(s);

  const GaussRule& rule = gauss_legendre(kPoseNodes);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t e = 1; e < edges.size(); ++e) {
    const double a = edges[e - 1];
    const double b = edges[e];
    double turn = 0.0;
    constexpr int kProbe = 64;
    for (int k = 0; k < kProbe; ++k) {
      const double t = a + (b - a) * (k + 0.5) / kProbe;
      turn = std::max(turn, std::abs(profile.mu(t)));
    }
    turn *= (b - a);
    const int panels = std::clamp(static_cast<int>(std::ceil(turn / 0.25)), 4, 1 << 16);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      std::complex<double> panel{0.0, 0.0};
      for (int k = 0; k < kPoseNodes; ++k) {
        const double th = profile.heading_bar(lo + h * rule.nodes[k]);
        panel += rule.weights[k] * std::complex<double>(std::cos(th), std::sin(th));
      }
      acc += h * panel;
    }
  }
  return {acc.real(), acc.imag(), theta};
}

}  // namespace ucm
