#include "ucm/simplex_quadrature.hpp"

#include <sstream>

namespace ucm {

void QuadratureSettings::validate() const {
  if (nodes_per_level < 2) throw InvalidArgument("nodes_per_level must be >= 2");
  if (max_dim_deterministic < 1) throw InvalidArgument("max_dim_deterministic must be >= 1");
  if (qmc_samples < 16) throw InvalidArgument("qmc_samples must be >= 16");
  if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol must be > 0");
  if (threads < 1) throw InvalidArgument("threads must be >= 1");
}

QuadratureResult integrate_ordered(const OrderedIntegrand& f, int dim, double s,
                                   const QuadratureSettings& settings) {
  auto g = [](double) { return 0.0; };
  auto factor = [](int, const ChainNode&, const ChainNode&) {
    return std::complex<double>(1.0, 0.0);
  };
  auto leaf = [&f](ChainPoint point) {
    double pts[64];
    std::vector<double> heap;
    double* out = pts;
    const std::size_t d = point.size() - 1;
    if (d > 64) {
      heap.resize(d);
      out = heap.data();
    }
    for (std::size_t b = 0; b < d; ++b) out[b] = point[b + 1].s;
    return f(std::span<const double>(out, d));
  };
  return integrate_chain(g, factor, leaf, dim, s, settings);
}

namespace detail {

void throw_non_finite(ChainPoint point, int depth) {
  std::ostringstream os;
  os << "non-finite integrand value at ordered point (";
  for (int b = 1; b <= depth && b < static_cast<int>(point.size()); ++b) {
    if (b > 1) os << ", ";
    os << point[b].s;
  }
  os << ")";
  throw EvaluationError(os.str());
}

std::vector<double> kronecker_alphas(int dim) {
  // Generalized golden ratio: unique positive root of x^{d+1} = x + 1.
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
  std::vector<double> a(static_cast<std::size_t>(dim));
  double p = 1.0;
  for (int j = 0; j < dim; ++j) {
    p /= phi;
    a[j] = p - std::floor(p);
  }
  return a;
}

std::vector<std::vector<double>> qmc_shifts(int dim, int replicates) {
  // splitmix64 from a fixed seed; the shifts are part of the rule, not of any
  // user-visible randomness.
  std::uint64_t state = 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(dim);
  auto next = [&state] {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  std::vector<std::vector<double>> out(static_cast<std::size_t>(replicates),
                                       std::vector<double>(static_cast<std::size_t>(dim)));
  for (auto& row : out) {
    for (auto& v : row) v = static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  return out;
}

double simplex_volume(int dim, double s) {
  double v = 1.0;
  for (int k = 1; k <= dim; ++k) v *= s / k;
  return v;
}

}  // namespace detail
}  // namespace ucm
