#include "ucm/d4.hpp"

#include <cmath>
#include <sstream>

#include "ucm/errors.hpp"
#include "ucm/low_moments.hpp"

namespace ucm {

const std::vector<D4Term>& d4_terms() {
  static const std::vector<D4Term> terms = {
      {"C000", 8.0, 0, 0, 4,
       {{{-1, -3, 3, 1}, {-1, -1, 1, 1}},
        {{-1, 1, -1, 1}, {-1, 1, -1, 1}},
        {{-1, 1, -1, 1}, {-1, 1, 1, -1}}}},
      {"C100+C120", 4.0, 1, 0, 3,
       {{{-4, 3, 1, 0}, {2, -1, -1, 0}},
        {{-1, 0, 1, 0}, {-1, 2, -1, 0}},
        {{-1, -3, 4, 0}, {-1, -1, 2, 0}}}},
      {"C111", 8.0, 1, 1, 2, {{{-1, 1, 0, 0}, {-1, 1, 0, 0}}}},
      // e^{-2 K_theta (s_2 - s_1)} = e^{-(K_theta/2)(-4 s_1 + 4 s_2)}
      {"C220", 2.0, 2, 0, 2, {{{-4, 4, 0, 0}, {-2, 2, 0, 0}}}},
      {"C222", 2.0, 2, 2, 0, {}},
  };
  return terms;
}

std::vector<D4TermValue> d4_term_values(const SpeedRatioProfile& profile,
                                        const NoiseParams& params, double s,
                                        const QuadratureSettings& settings) {
  params.validate();
  profile.heading_bar(s);
  const double kt = params.k_theta;
  std::vector<D4TermValue> out;
  const auto breaks = profile.breakpoints(s);
  for (const auto& term : d4_terms()) {
    const double scale =
        term.weight * std::pow(params.k_r, term.k_r_power) * std::pow(s, term.s_power);
    if (scale == 0.0) {
      out.push_back({term.label, 0.0, 0.0});
      continue;
    }
    if (term.dim == 0) {
      out.push_back({term.label, scale, 0.0});
      continue;
    }
    auto node = [&profile](double t) { return profile.heading_bar(t); };
    auto factor = [](int, const ChainNode&, const ChainNode&) { return std::complex<double>(1.0); };
    auto leaf = [&term, kt](ChainPoint pt) {
      double acc = 0.0;
      for (const auto& k : term.kernels) {
        double decay = 0.0;
        double phase = 0.0;
        for (int j = 0; j < term.dim; ++j) {
          decay += k.decay[static_cast<std::size_t>(j)] * pt[static_cast<std::size_t>(j) + 1].s;
          phase += k.phase[static_cast<std::size_t>(j)] * pt[static_cast<std::size_t>(j) + 1].g;
        }
        acc += std::exp(-0.5 * kt * decay) * std::cos(phase);
      }
      return std::complex<double>(acc);
    };
    const auto q = integrate_chain(node, factor, leaf, term.dim, s, settings, breaks);
    out.push_back({term.label, scale * q.value.real(), std::abs(scale) * q.err_estimate});
  }
  return out;
}

double d4_moment(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                 const QuadratureSettings& settings) {
  double acc = 0.0;
  for (const auto& t : d4_term_values(profile, params, s, settings)) acc += t.value;
  return acc;
}

double variance_d2(const SpeedRatioProfile& profile, const NoiseParams& params, double s,
                   const QuadratureSettings& settings) {
  const double d2 = mean_squared_distance(profile, params, s, settings);
  const double var = d4_moment(profile, params, s, settings) - d2 * d2;
  if (var < -kVarianceSlack) {
    std::ostringstream os;
    os << "variance of D^2 evaluated to " << var << " (cancellation)";
    throw CancellationError(os.str());
  }
  return var;
}

}  // namespace ucm
