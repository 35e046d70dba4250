#include "ucm/constmu_closed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ucm/d4.hpp"
#include "ucm/errors.hpp"

namespace ucm {
namespace {

using cplx = std::complex<double>;

void check_length(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    std::ostringstream os;
    os << "curve length must be finite and >= 0, got " << s;
    throw DomainError(os.str());
  }
}

void check_mu(double mu0) {
  if (!std::isfinite(mu0)) throw InvalidArgument("mu0 must be finite");
}

// e^x - 1 without cancellation for small |x|.
cplx expm1c(cplx x) {
  const double a = x.real();
  const double b = x.imag();
  const double sh = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * sh * sh, std::exp(a) * std::sin(b)};
}

// (e^x - 1)/x and (e^x - 1 - x)/x^2
cplx phi1(cplx x) {
  if (std::abs(x) < kSeriesSwitch) {
    cplx acc(0.0, 0.0);
    cplx xk(1.0, 0.0);
    double fact = 1.0;
    for (int k = 0; k < 7; ++k) {
      fact *= (k + 1);
      acc += xk / fact;
      xk *= x;
    }
    return acc;
  }
  return expm1c(x) / x;
}

cplx phi2(cplx x) {
  if (std::abs(x) < kSeriesSwitch) {
    cplx acc(0.0, 0.0);
    cplx xk(1.0, 0.0);
    double fact = 1.0;  // (k+2)!
    for (int k = 0; k < 7; ++k) {
      fact *= (k + 2);
      acc += xk / fact;
      xk *= x;
    }
    return acc;
  }
  return (expm1c(x) - x) / (x * x);
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Assembled <D^4> as an exp-poly sum in s, plus overall scalars per term.
struct D4Assembly {
  std::vector<std::pair<double, ExpPolySum>> parts;  // scale, chain integral
};

D4Assembly assemble_d4(double mu0, const NoiseParams& params, double s) {
  D4Assembly out;
  const double kt = params.k_theta;
  for (const auto& term : d4_terms()) {
    const double scale =
        term.weight * std::pow(params.k_r, term.k_r_power) * std::pow(s, term.s_power);
    if (scale == 0.0) continue;
    if (term.dim == 0) {
      out.parts.emplace_back(scale, ExpPolySum::constant(1.0));
      continue;
    }
    ExpPolySum sum;
    for (const auto& k : term.kernels) {
      std::vector<cplx> kappa(static_cast<std::size_t>(term.dim));
      int phase_total = 0;
      for (int j = 0; j < term.dim; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        kappa[ju] = cplx(-0.5 * kt * k.decay[ju], mu0 * k.phase[ju]);
        phase_total += k.phase[ju];
      }
      if (phase_total != 0) throw ConsistencyError("D^4 kernel phases do not cancel");
      std::vector<cplx> rates(kappa.size());
      cplx tail(0.0, 0.0);
      for (int b = term.dim - 1; b >= 0; --b) {
        tail += kappa[static_cast<std::size_t>(b)];
        rates[static_cast<std::size_t>(b)] = tail;
      }
      sum += ordered_exponential_chain(rates, s);
    }
    out.parts.emplace_back(scale, std::move(sum));
  }
  return out;
}

}  // namespace

ComplexRate::ComplexRate(cplx v) : value(v) {
  if (!finite(v)) throw InvalidArgument("complex rate must be finite");
}

ComplexRate base_rate(double mu0, const NoiseParams& params) {
  check_mu(mu0);
  params.validate();
  return ComplexRate(cplx(-0.5 * params.k_theta, mu0));
}

std::vector<ComplexRate> d4_reference_rates(double mu0, const NoiseParams& params) {
  check_mu(mu0);
  params.validate();
  const double kt = params.k_theta;
  return {ComplexRate(cplx(-0.5 * kt, mu0)), ComplexRate(cplx(-1.5 * kt, mu0)),
          ComplexRate(cplx(-2.0 * kt, 2.0 * mu0))};
}

ExpPolySum ordered_exponential_chain(std::span<const cplx> rates, double horizon) {
  if (rates.empty()) return ExpPolySum::constant(1.0);
  ExpPolySum h = ExpPolySum::exponential(rates[0]);
  for (std::size_t k = 1; k < rates.size(); ++k) {
    h = iterate_integral(h.shifted(-rates[k]), Limit::zero, Limit::variable, horizon)
            .shifted(rates[k]);
  }
  return iterate_integral(h, Limit::zero, Limit::variable, horizon);
}

double d2_constmu(double mu0, const NoiseParams& params, double s) {
  check_length(s);
  const cplx z = base_rate(mu0, params).value;
  return params.k_r * s + 2.0 * s * s * phi2(z * s).real();
}

double d4_constmu(double mu0, const NoiseParams& params, double s) {
  check_length(s);
  check_mu(mu0);
  params.validate();
  double acc = 0.0;
  for (const auto& [scale, f] : assemble_d4(mu0, params, s).parts) acc += scale * f.evaluate(s).real();
  return acc;
}

double variance_d2_constmu(double mu0, const NoiseParams& params, double s) {
  const double d2 = d2_constmu(mu0, params, s);
  const double var = d4_constmu(mu0, params, s) - d2 * d2;
  if (var < -kVarianceSlack) {
    std::ostringstream os;
    os << "variance of D^2 evaluated to " << var << " (cancellation)";
    throw CancellationError(os.str());
  }
  return var;
}

cplx mean_pose_constmu(double mu0, const NoiseParams& params, double theta0, double s) {
  check_length(s);
  if (!std::isfinite(theta0)) throw InvalidArgument("theta0 must be finite");
  const cplx z = base_rate(mu0, params).value;
  return std::polar(1.0, theta0) * s * phi1(z * s);
}

std::vector<cplx> d4_constmu_rates(double mu0, const NoiseParams& params, double s) {
  check_length(s);
  check_mu(mu0);
  params.validate();
  std::vector<cplx> out;
  auto seen = [&out](cplx r) {
    return std::any_of(out.begin(), out.end(), [r](cplx o) {
      return std::abs(o - r) <= 1e-12 * std::max(1.0, std::abs(r));
    });
  };
  for (const auto& [scale, f] : assemble_d4(mu0, params, s).parts) {
    (void)scale;
    for (const auto& t : f.terms()) {
      if (t.rate == cplx(0.0, 0.0) || std::abs(t.coeff) == 0.0) continue;
      const cplx r = t.rate.imag() < 0.0 ? std::conj(t.rate) : t.rate;
      if (!seen(r)) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace ucm
