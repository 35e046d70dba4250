#pragma once

// Nested ordered integrals
//
//   int_0^s ds_1 int_{s_1}^s ds_2 ... int_{s_{d-1}}^s ds_d  f(s_1, ..., s_d)
//
// Level b samples s_b on [s_{b-1}, s] with a Gauss-Legendre rule, so the cost
// is G^d for G nodes per level. Above max_dim_deterministic the integral is
// estimated by randomized quasi-Monte Carlo on the unit cube, with the sorted
// coordinates mapped onto the simplex.
//
// The chain form lets integrands that factor over consecutive intervals,
//   leaf(s_d) * prod_b factor(b, s_b -> s_{b+1}),
// reuse partial products across nodes; the node function g(s) is evaluated
// once per node, not once per leaf.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ucm/errors.hpp"
#include "ucm/gauss_legendre.hpp"
#include "ucm/parallel.hpp"

namespace ucm {

struct QuadratureSettings {
  int nodes_per_level = 24;
  int max_dim_deterministic = 5;
  std::int64_t qmc_samples = 1 << 18;
  double rel_tol = 1e-8;
  int threads = 1;

  void validate() const;
};

struct QuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double err_estimate = 0.0;
  bool used_qmc = false;
  // err_estimate <= rel_tol * |value| (or the value vanishes to rounding)
  bool converged = true;
};

// One node of the chain: curve length and the memoized node value g(s).
struct ChainNode {
  double s;
  double g;
};

// The ordered point passed to leaf functions: nodes[0] is the fixed start
// (s_0 = 0, g(0)), nodes[1..d] the integration variables.
using ChainPoint = std::span<const ChainNode>;

using OrderedIntegrand = std::function<std::complex<double>(std::span<const double>)>;

// Generic entry point: f receives (s_1, ..., s_d), ascending.
QuadratureResult integrate_ordered(const OrderedIntegrand& f, int dim, double s,
                                   const QuadratureSettings& settings);

namespace detail {

[[noreturn]] void throw_non_finite(ChainPoint point, int depth);
std::vector<double> kronecker_alphas(int dim);
std::vector<std::vector<double>> qmc_shifts(int dim, int replicates);
double simplex_volume(int dim, double s);

inline void check_finite(const std::complex<double>& v, ChainPoint point, int depth) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw_non_finite(point, depth);
}

// Pieces of [lo, hi] between consecutive breaks, appended to `out`.
inline void split_interval(double lo, double hi, std::span<const double> breaks,
                           std::vector<std::pair<double, double>>& out) {
  double a = lo;
  for (double b : breaks) {
    if (b <= a) continue;
    if (b >= hi) break;
    out.emplace_back(a, b);
    a = b;
  }
  out.emplace_back(a, hi);
}

template <class NodeFn, class Factor, class Leaf>
std::complex<double> chain_recurse(const NodeFn& g, const Factor& factor, const Leaf& leaf,
                                   const GaussRule& rule, int dim, double s, int level,
                                   std::span<const double> breaks, std::vector<ChainNode>& buf) {
  if (level == dim) {
    const auto v = leaf(ChainPoint(buf.data(), buf.size()));
    check_finite(v, ChainPoint(buf.data(), buf.size()), dim);
    return v;
  }
  const ChainNode lo = buf[level];
  std::pair<double, double> single[1] = {{lo.s, s}};
  std::vector<std::pair<double, double>> pieces;
  std::span<const std::pair<double, double>> span(single);
  if (!breaks.empty()) {
    split_interval(lo.s, s, breaks, pieces);
    span = pieces;
  }
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [a, b] : span) {
    const double len = b - a;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double t = a + len * rule.nodes[k];
      buf[level + 1] = ChainNode{t, g(t)};
      const std::complex<double> fac = factor(level, lo, buf[level + 1]);
      check_finite(fac, ChainPoint(buf.data(), level + 2), level + 1);
      if (fac == std::complex<double>(0.0, 0.0)) continue;
      acc += (rule.weights[k] * len) * fac *
             chain_recurse(g, factor, leaf, rule, dim, s, level + 1, breaks, buf);
    }
  }
  return acc;
}

template <class NodeFn, class Factor, class Leaf>
std::complex<double> chain_gauss(const NodeFn& g, const Factor& factor, const Leaf& leaf, int dim,
                                 double s, int order, int threads, std::span<const double> breaks) {
  const GaussRule& rule = gauss_legendre(order);
  const ChainNode start{0.0, g(0.0)};
  std::vector<std::pair<double, double>> pieces;
  split_interval(0.0, s, breaks, pieces);
  const std::size_t per = rule.nodes.size();
  // Outer level split across workers; per-node partial sums are reduced in
  // node order so the result does not depend on the worker count.
  std::vector<std::complex<double>> partial(pieces.size() * per);
  parallel_for(partial.size(), threads, [&](std::size_t idx) {
    const auto [a, b] = pieces[idx / per];
    const std::size_t k = idx % per;
    std::vector<ChainNode> buf(static_cast<std::size_t>(dim) + 1);
    buf[0] = start;
    const double len = b - a;
    const double t = a + len * rule.nodes[k];
    buf[1] = ChainNode{t, g(t)};
    const std::complex<double> fac = factor(0, start, buf[1]);
    check_finite(fac, ChainPoint(buf.data(), 2), 1);
    partial[idx] = (rule.weights[k] * len) * fac *
                   chain_recurse(g, factor, leaf, rule, dim, s, 1, breaks, buf);
  });
  return pairwise_sum(std::span<const std::complex<double>>(partial));
}

template <class NodeFn, class Factor, class Leaf>
QuadratureResult chain_qmc(const NodeFn& g, const Factor& factor, const Leaf& leaf, int dim,
                           double s, const QuadratureSettings& settings) {
  constexpr int kReplicates = 16;
  const auto alphas = kronecker_alphas(dim);
  const auto shifts = qmc_shifts(dim, kReplicates);
  const std::int64_t per_rep = std::max<std::int64_t>(1, settings.qmc_samples / kReplicates);

  std::vector<std::complex<double>> means(kReplicates);
  parallel_for(kReplicates, settings.threads, [&](std::size_t rep) {
    std::vector<ChainNode> buf(static_cast<std::size_t>(dim) + 1);
    std::vector<double> u(static_cast<std::size_t>(dim));
    std::vector<std::complex<double>> chunk;
    chunk.reserve(1024);
    std::vector<std::complex<double>> chunk_sums;
    buf[0] = ChainNode{0.0, g(0.0)};
    for (std::int64_t n = 0; n < per_rep; ++n) {
      for (int j = 0; j < dim; ++j) {
        double x = shifts[rep][j] + static_cast<double>(n + 1) * alphas[j];
        u[j] = x - std::floor(x);
      }
      std::sort(u.begin(), u.end());
      std::complex<double> prod{1.0, 0.0};
      for (int j = 0; j < dim; ++j) {
        const double t = s * u[j];
        buf[j + 1] = ChainNode{t, g(t)};
        const auto fac = factor(j, buf[j], buf[j + 1]);
        check_finite(fac, ChainPoint(buf.data(), j + 2), j + 1);
        prod *= fac;
      }
      const auto v = leaf(ChainPoint(buf.data(), buf.size()));
      check_finite(v, ChainPoint(buf.data(), buf.size()), dim);
      chunk.push_back(prod * v);
      if (chunk.size() == 1024) {
        chunk_sums.push_back(pairwise_sum(std::span<const std::complex<double>>(chunk)));
        chunk.clear();
      }
    }
    if (!chunk.empty()) chunk_sums.push_back(pairwise_sum(std::span<const std::complex<double>>(chunk)));
    means[rep] = pairwise_sum(std::span<const std::complex<double>>(chunk_sums)) /
                 static_cast<double>(per_rep);
  });

  const double vol = simplex_volume(dim, s);
  std::complex<double> mean = pairwise_sum(std::span<const std::complex<double>>(means)) /
                              static_cast<double>(kReplicates);
  double ss = 0.0;
  for (const auto& m : means) ss += std::norm(m - mean);
  const double se = std::sqrt(ss / (kReplicates - 1) / kReplicates);
  QuadratureResult out;
  out.value = vol * mean;
  out.err_estimate = vol * se;
  out.used_qmc = true;
  return out;
}

}  // namespace detail

// Chain integral. g: double -> double, evaluated once per node.
// factor(b, from, to) -> complex is the weight of interval b (s_b -> s_{b+1});
// leaf(point) -> complex closes the product at the last node.
// `breaks` (ascending) are points where the integrand loses smoothness; every
// level of the Gauss rule is split there. The quasi-Monte Carlo path ignores them.
template <class NodeFn, class Factor, class Leaf>
QuadratureResult integrate_chain(const NodeFn& g, const Factor& factor, const Leaf& leaf, int dim,
                                 double s, const QuadratureSettings& settings,
                                 std::span<const double> breaks = {}) {
  settings.validate();
  if (dim < 0) throw InvalidArgument("integration dimension must be >= 0");
  if (!(s >= 0.0) || !std::isfinite(s)) throw InvalidArgument("integration length must be >= 0");

  QuadratureResult out;
  if (dim == 0) {
    const ChainNode start{0.0, g(0.0)};
    out.value = leaf(ChainPoint(&start, 1));
    detail::check_finite(out.value, ChainPoint(&start, 1), 0);
    return out;
  }
  if (s == 0.0) return out;

  if (dim > settings.max_dim_deterministic) {
    out = detail::chain_qmc(g, factor, leaf, dim, s, settings);
  } else {
    const int order = settings.nodes_per_level;
    const auto coarse =
        detail::chain_gauss(g, factor, leaf, dim, s, order, settings.threads, breaks);
    const auto fine =
        detail::chain_gauss(g, factor, leaf, dim, s, order + 2, settings.threads, breaks);
    out.value = fine;
    out.err_estimate = std::abs(fine - coarse);
  }
  const double scale = std::max(std::abs(out.value), 1e-300);
  out.converged = out.err_estimate <= settings.rel_tol * scale || out.err_estimate < 1e-14;
  return out;
}

}  // namespace ucm
