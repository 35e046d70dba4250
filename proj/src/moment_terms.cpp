#include "ucm/moment_terms.hpp"

#include <algorithm>
#include <sstream>

#include "ucm/errors.hpp"

namespace ucm {

void MomentSpec::validate() const {
  if (p < 0 || q < 0 || r < 0) throw InvalidArgument("moment orders must be non-negative");
}

bool within_envelope(const MomentSpec& spec) noexcept {
  return spec.p + spec.q <= kMaxPlanarOrder && spec.r <= kMaxHeadingOrder;
}

TermKey TermKey::make(const MomentSpec& spec, int n, int l, int m) {
  spec.validate();
  auto reject = [&](const char* why) {
    std::ostringstream os;
    os << "term (n=" << n << ", l=" << l << ", m=" << m << ") invalid for (p=" << spec.p
       << ", q=" << spec.q << "): " << why;
    throw ConstraintError(os.str());
  };
  if (n < 0 || n > (spec.p + spec.q) / 2) reject("n outside [0, floor((p+q)/2)]");
  if (l < 0 || l > 2 * n) reject("l outside [0, 2n]");
  if (2 * n - l > spec.p) reject("2n - l exceeds p");
  if (l > spec.q) reject("l exceeds q");
  if (m < 0 || m > std::min(l, 2 * n - l)) reject("m outside [0, min(l, 2n - l)]");
  if ((l - m) % 2 != 0) reject("m must have the parity of l");

  TermKey k;
  k.spec_ = spec;
  k.n_ = n;
  k.l_ = l;
  k.m_ = m;
  k.rho_ = (2 * n - l - m) / 2;
  k.sigma_ = spec.p - 2 * n + l;
  k.eta_ = (l - m) / 2;
  k.chi_ = spec.q - l;
  k.beta_ = spec.p + spec.q - n - m;
  k.alpha_ = spec.p - spec.q;
  if (k.beta_ != k.rho_ + k.sigma_ + k.eta_ + k.chi_ ||
      2 * k.rho_ + k.sigma_ - k.chi_ - 2 * k.eta_ != k.alpha_) {
    throw ConsistencyError("term key identities violated");
  }
  return k;
}

std::vector<TermKey> enumerate_term_keys(const MomentSpec& spec) {
  spec.validate();
  std::vector<TermKey> keys;
  for (int n = 0; n <= (spec.p + spec.q) / 2; ++n) {
    for (int l = 0; l <= 2 * n; ++l) {
      if (2 * n - l > spec.p || l > spec.q) continue;
      for (int m = l % 2; m <= std::min(l, 2 * n - l); m += 2) {
        keys.push_back(TermKey::make(spec, n, l, m));
      }
    }
  }
  return keys;
}

BigInt factorial(int n) {
  if (n < 0) throw InvalidArgument("factorial of a negative integer");
  BigInt acc = 1;
  for (int k = 2; k <= n; ++k) acc *= k;
  return acc;
}

BigInt double_factorial(int n) {
  if (n < -1) throw InvalidArgument("double factorial below -1");
  BigInt acc = 1;
  for (int k = n; k > 1; k -= 2) acc *= k;
  return acc;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (int j = 1; j <= k; ++j) {
    acc *= n - k + j;
    acc /= j;
  }
  return acc;
}

BigInt coefficient(const MomentSpec& spec, const TermKey& key) {
  if (!(key.spec() == spec)) {
    // re-validate against the requested spec
    return coefficient(spec, TermKey::make(spec, key.n(), key.l(), key.m()));
  }
  const int n = key.n();
  const int l = key.l();
  const int m = key.m();
  return binomial(spec.p, 2 * n - l) * binomial(spec.q, l) * binomial(2 * n - l, m) *
         binomial(l, m) * factorial(m) * double_factorial(2 * n - l - m - 1) *
         double_factorial(l - m - 1) * factorial(key.rho()) * factorial(key.eta()) *
         factorial(key.sigma()) * factorial(key.chi());
}

int CVector::prefix(int b) const {
  int acc = 0;
  for (int a = 0; a < b; ++a) acc += entries[static_cast<std::size_t>(a)];
  return acc;
}

std::vector<CVector> enumerate_c_vectors(const TermKey& key) {
  std::vector<int> base;
  base.reserve(static_cast<std::size_t>(key.beta()));
  base.insert(base.end(), static_cast<std::size_t>(key.rho()), -2);
  base.insert(base.end(), static_cast<std::size_t>(key.sigma()), -1);
  base.insert(base.end(), static_cast<std::size_t>(key.chi()), 1);
  base.insert(base.end(), static_cast<std::size_t>(key.eta()), 2);
  std::vector<CVector> out;
  do {
    out.push_back(CVector{base});
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

BigInt c_vector_count(const TermKey& key) {
  return factorial(key.beta()) /
         (factorial(key.rho()) * factorial(key.sigma()) * factorial(key.eta()) *
          factorial(key.chi()));
}

namespace {

void compose(int remaining, int slot, std::vector<int>& cur, std::vector<GammaVector>& out) {
  const int last = static_cast<int>(cur.size()) - 1;
  if (slot == last) {
    if (remaining % 2 == 0) {
      cur[static_cast<std::size_t>(slot)] = remaining;
      out.push_back(GammaVector{cur});
    }
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[static_cast<std::size_t>(slot)] = v;
    compose(remaining - v, slot + 1, cur, out);
  }
}

}  // namespace

std::vector<GammaVector> enumerate_gamma_vectors(int r, int beta) {
  if (r < 0 || beta < 0) throw InvalidArgument("r and beta must be non-negative");
  std::vector<GammaVector> out;
  std::vector<int> cur(static_cast<std::size_t>(beta) + 1, 0);
  compose(r, 0, cur, out);
  return out;
}

}  // namespace ucm
