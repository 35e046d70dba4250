#pragma once

// Index sets of the general moment expansion of <u^p w^q theta~^r>.
//
// A TermKey (n, l, m) selects how the 2n noise factors pair up: n pairs in
// total, l of the paired indices of w-type, m hetero (u-w) pairs. The
// remaining beta = p + q - n - m ordered integration variables carry phase
// steps c_b in {-2, -1, 1, 2}; a gamma vector splits theta~^r over the
// beta + 1 intervals between them.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace ucm {

using BigInt = boost::multiprecision::cpp_int;

struct MomentSpec {
  int p = 0;
  int q = 0;
  int r = 0;

  void validate() const;  // non-negative orders
  bool operator==(const MomentSpec&) const = default;
};

// Supported envelope: p + q <= 8, r <= 4.
inline constexpr int kMaxPlanarOrder = 8;
inline constexpr int kMaxHeadingOrder = 4;
bool within_envelope(const MomentSpec& spec) noexcept;

class TermKey {
 public:
  // Throws ConstraintError when (n, l, m) is not admissible for spec.
  static TermKey make(const MomentSpec& spec, int n, int l, int m);

  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  int m() const noexcept { return m_; }

  int rho() const noexcept { return rho_; }      // -2 entries (u-type homo pairs)
  int sigma() const noexcept { return sigma_; }  // -1 entries (unpaired u indices)
  int eta() const noexcept { return eta_; }      //  2 entries (w-type homo pairs)
  int chi() const noexcept { return chi_; }      //  1 entries (unpaired w indices)
  int beta() const noexcept { return beta_; }    // remaining integral dimension
  int alpha() const noexcept { return alpha_; }  // p - q

  const MomentSpec& spec() const noexcept { return spec_; }

  friend bool operator==(const TermKey& a, const TermKey& b) noexcept {
    return a.spec_ == b.spec_ && a.n_ == b.n_ && a.l_ == b.l_ && a.m_ == b.m_;
  }

 private:
  TermKey() = default;
  MomentSpec spec_;
  int n_ = 0, l_ = 0, m_ = 0;
  int rho_ = 0, sigma_ = 0, eta_ = 0, chi_ = 0, beta_ = 0, alpha_ = 0;
};

// All admissible keys, lexicographic in (n, l, m).
std::vector<TermKey> enumerate_term_keys(const MomentSpec& spec);

// C(p,2n-l) C(q,l) C(2n-l,m) C(l,m) m! (2n-l-m-1)!! (l-m-1)!! rho! eta! sigma! chi!
BigInt coefficient(const MomentSpec& spec, const TermKey& key);

struct CVector {
  std::vector<int> entries;

  // Phi_b = c_1 + ... + c_b, Phi_0 = 0.
  int prefix(int b) const;
};

// Distinct arrangements of the key's multiset, lexicographic.
std::vector<CVector> enumerate_c_vectors(const TermKey& key);

// beta! / (rho! sigma! eta! chi!) as an exact integer.
BigInt c_vector_count(const TermKey& key);

struct GammaVector {
  std::vector<int> parts;  // beta + 1 entries, last one even, summing to r
};

std::vector<GammaVector> enumerate_gamma_vectors(int r, int beta);

BigInt factorial(int n);
// n!! with (-1)!! = 0!! = 1.
BigInt double_factorial(int n);
BigInt binomial(int n, int k);  // 0 when k < 0 or k > n

}  // namespace ucm
