#include "ucm/general_moments.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "ucm/errors.hpp"
#include "ucm/parallel.hpp"

namespace ucm {
namespace {

using cplx = std::complex<double>;

// One ordered integral of the expansion together with its scalar weight.
struct Job {
  cplx weight;
  int dim = 0;
  std::vector<int> phase;                     // alpha + Phi_b, b = 0..dim-1
  std::vector<int> gamma;                     // dim + 1 parts
  std::vector<std::vector<double>> hermite;  // per interval: g!/(a!(g-2a)! 2^a)
};

double to_double(const BigInt& v) { return v.convert_to<double>(); }

cplx ipow(cplx base, int e) {
  cplx acc(1.0, 0.0);
  for (; e > 0; --e) acc *= base;
  return acc;
}

std::vector<double> hermite_coefficients(int g) {
  std::vector<double> h;
  for (int a = 0; 2 * a <= g; ++a) {
    const BigInt num = factorial(g);
    const BigInt den = factorial(a) * factorial(g - 2 * a) * (BigInt(1) << a);
    h.push_back(to_double(num) / to_double(den));
  }
  return h;
}

// r! (gamma_last - 1)!! / prod gamma_b!
double gamma_weight(int r, const GammaVector& gv) {
  BigInt den = 1;
  for (int g : gv.parts) den *= factorial(g);
  const BigInt num = factorial(r) * double_factorial(gv.parts.back() - 1);
  return to_double(num) / to_double(den);
}

struct Integrand {
  const Job& job;
  double k_theta;
  double s;

  cplx operator()(int b, const ChainNode& from, const ChainNode& to) const {
    const double ds = to.s - from.s;
    const double a = job.phase[static_cast<std::size_t>(b)];
    const cplx base = std::exp(cplx(-0.5 * a * a * k_theta * ds, a * (to.g - from.g)));
    const int g = job.gamma[static_cast<std::size_t>(b)];
    if (g == 0) return base;
    // <X^g e^{i a X}> / e^{-a^2 var/2} for X ~ N(0, var), var = K_theta ds,
    // with var^{g/2} kept outside as ds^{g/2} (K_theta^{r/2} is global).
    const cplx x(0.0, a * std::sqrt(k_theta * ds));
    const auto& h = job.hermite[static_cast<std::size_t>(b)];
    cplx sum(0.0, 0.0);
    for (std::size_t ai = 0; ai < h.size(); ++ai) {
      sum += h[ai] * ipow(x, g - 2 * static_cast<int>(ai));
    }
    return base * std::pow(ds, 0.5 * g) * sum;
  }
};

std::vector<Job> build_jobs(const MomentSpec& spec, const SpeedRatioProfile& profile,
                            const NoiseParams& params, double s, std::int64_t& key_count) {
  std::vector<Job> jobs;
  const auto keys = enumerate_term_keys(spec);
  key_count = static_cast<std::int64_t>(keys.size());
  const cplx start_phase = std::polar(1.0, (spec.p - spec.q) * profile.theta0());
  const double heading_scale = spec.r == 0 ? 1.0 : std::pow(params.k_theta, 0.5 * spec.r);

  for (const auto& key : keys) {
    const double key_weight = std::pow(params.k_r, key.n()) * to_double(coefficient(spec, key)) *
                              std::pow(s, key.m()) * heading_scale;
    if (key_weight == 0.0) continue;
    const auto gammas = enumerate_gamma_vectors(spec.r, key.beta());
    for (const auto& cv : enumerate_c_vectors(key)) {
      std::vector<int> phase(static_cast<std::size_t>(key.beta()));
      for (int b = 0; b < key.beta(); ++b) phase[static_cast<std::size_t>(b)] = key.alpha() + cv.prefix(b);
      for (const auto& gv : gammas) {
        Job job;
        job.weight = key_weight * gamma_weight(spec.r, gv) * start_phase;
        job.dim = key.beta();
        job.phase = phase;
        job.gamma = gv.parts;
        for (int b = 0; b < key.beta(); ++b) {
          job.hermite.push_back(hermite_coefficients(gv.parts[static_cast<std::size_t>(b)]));
        }
        jobs.push_back(std::move(job));
      }
    }
  }
  return jobs;
}

MomentResult evaluate(const MomentSpec& spec, const SpeedRatioProfile& profile,
                      const NoiseParams& params, double s, const QuadratureSettings& settings,
                      EnvelopePolicy policy) {
  spec.validate();
  params.validate();
  settings.validate();
  profile.heading_bar(s);

  MomentResult result;
  if (!within_envelope(spec)) {
    if (policy == EnvelopePolicy::refuse) {
      std::ostringstream os;
      os << "moment (p=" << spec.p << ", q=" << spec.q << ", r=" << spec.r
         << ") outside the supported envelope p+q <= " << kMaxPlanarOrder
         << ", r <= " << kMaxHeadingOrder;
      throw EnvelopeError(os.str());
    }
    result.cost_warning = true;
  }

  const auto jobs = build_jobs(spec, profile, params, s, result.term_keys);
  const auto breaks = profile.breakpoints(s);
  QuadratureSettings inner = settings;
  inner.threads = 1;

  std::vector<cplx> values(jobs.size());
  std::vector<double> errors(jobs.size());
  parallel_for(jobs.size(), settings.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    const int last = job.gamma.back();
    auto node = [&profile](double t) { return profile.heading_bar(t); };
    auto leaf = [last, s](ChainPoint pt) -> cplx {
      if (last == 0) return 1.0;
      return std::pow(s - pt.back().s, last / 2);
    };
    const auto q = integrate_chain(node, Integrand{job, params.k_theta, s}, leaf, job.dim, s,
                                   inner, breaks);
    values[j] = job.weight * q.value;
    errors[j] = std::abs(job.weight) * q.err_estimate;
  });

  result.value = pairwise_sum(std::span<const cplx>(values));
  result.err_estimate = pairwise_sum(std::span<const double>(errors));
  result.terms_evaluated = static_cast<std::int64_t>(jobs.size());
  return result;
}

}  // namespace

MomentResult uv_moment(const MomentSpec& spec, const SpeedRatioProfile& profile,
                       const NoiseParams& params, double s, const QuadratureSettings& settings,
                       EnvelopePolicy policy) {
  if (spec.r != 0) throw InvalidArgument("uv_moment requires r = 0; use uvtheta_moment");
  return evaluate(spec, profile, params, s, settings, policy);
}

MomentResult uvtheta_moment(const MomentSpec& spec, const SpeedRatioProfile& profile,
                            const NoiseParams& params, double s,
                            const QuadratureSettings& settings, EnvelopePolicy policy) {
  return evaluate(spec, profile, params, s, settings, policy);
}

double xy_moment(int i, int j, int k, const SpeedRatioProfile& profile, const NoiseParams& params,
                 double s, const QuadratureSettings& settings, EnvelopePolicy policy) {
  if (i < 0 || j < 0 || k < 0) throw InvalidArgument("moment orders must be non-negative");
  const int total = i + j;
  // x^i y^j = (u + w)^i (u - w)^j / (2^{i+j} i^j)
  const cplx norm = ipow(cplx(0.0, -1.0), j) / std::ldexp(1.0, total);
  cplx value(0.0, 0.0);
  double scale = 0.0;
  double err = 0.0;
  for (int pu = 0; pu <= total; ++pu) {
    BigInt c = 0;
    for (int a = 0; a <= i; ++a) {
      const int b = pu - a;
      if (b < 0 || b > j) continue;
      const BigInt term = binomial(i, a) * binomial(j, b);
      if ((j - b) % 2 == 0) {
        c += term;
      } else {
        c -= term;
      }
    }
    if (c == 0) continue;
    const auto m = uvtheta_moment(MomentSpec{pu, total - pu, k}, profile, params, s, settings, policy);
    const cplx contrib = norm * to_double(c) * m.value;
    value += contrib;
    scale += std::abs(contrib);
    err += std::abs(norm * to_double(c)) * m.err_estimate;
  }
  const double tol = 1e-8 * std::abs(value.real()) + 1e-12 * scale + err;
  if (std::abs(value.imag()) > tol) {
    std::ostringstream os;
    os << "imaginary residue " << value.imag() << " of <x^" << i << " y^" << j << " theta~^" << k
       << "> exceeds tolerance " << tol;
    throw ConsistencyError(os.str());
  }
  return value.real();
}

}  // namespace ucm
