#pragma once

// Moments of any order: <u^p w^q>, <u^p w^q theta~^r> and <x^i y^j theta~^k>,
// with u = int e^{i theta}(ds + noise), w its conjugate partner and
// theta~ = theta - thetabar.

#include <complex>
#include <cstdint>

#include "ucm/moment_terms.hpp"
#include "ucm/simplex_quadrature.hpp"
#include "ucm/trajectory.hpp"

namespace ucm {

enum class EnvelopePolicy {
  refuse,  // EnvelopeError outside the supported envelope
  warn,    // evaluate anyway, flag cost_warning on the result
};

struct MomentResult {
  std::complex<double> value{0.0, 0.0};
  double err_estimate = 0.0;
  std::int64_t terms_evaluated = 0;  // ordered integrals actually evaluated
  std::int64_t term_keys = 0;        // admissible (n, l, m) keys
  bool cost_warning = false;
};

MomentResult uv_moment(const MomentSpec& spec, const SpeedRatioProfile& profile,
                       const NoiseParams& params, double s,
                       const QuadratureSettings& settings = {},
                       EnvelopePolicy policy = EnvelopePolicy::refuse);

MomentResult uvtheta_moment(const MomentSpec& spec, const SpeedRatioProfile& profile,
                            const NoiseParams& params, double s,
                            const QuadratureSettings& settings = {},
                            EnvelopePolicy policy = EnvelopePolicy::refuse);

// Real moment <x^i y^j theta~^k>. Throws ConsistencyError if the assembled
// value keeps an imaginary residue above tolerance.
double xy_moment(int i, int j, int k, const SpeedRatioProfile& profile, const NoiseParams& params,
                 double s, const QuadratureSettings& settings = {},
                 EnvelopePolicy policy = EnvelopePolicy::refuse);

}  // namespace ucm
