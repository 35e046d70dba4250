#pragma once

// Finite sums  sum_k c_k t^{m_k} e^{lambda_k t}  closed under multiplication
// by exponentials and under integration in t; enough to integrate nested
// exponential kernels exactly.

#include <complex>
#include <vector>

namespace ucm {

struct ExpPolyTerm {
  std::complex<double> coeff;
  std::complex<double> rate;
  int power;
};

class ExpPolySum {
 public:
  ExpPolySum() = default;

  static ExpPolySum constant(std::complex<double> c);
  static ExpPolySum exponential(std::complex<double> rate, std::complex<double> coeff = 1.0);
  static ExpPolySum monomial(int power, std::complex<double> coeff = 1.0);

  // Adds c t^power e^{rate t}; merges with an existing (rate, power) term.
  void add(std::complex<double> coeff, std::complex<double> rate, int power);

  const std::vector<ExpPolyTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  ExpPolySum& operator+=(const ExpPolySum& other);
  ExpPolySum& operator-=(const ExpPolySum& other);
  ExpPolySum& operator*=(std::complex<double> scalar);
  friend ExpPolySum operator*(const ExpPolySum& a, const ExpPolySum& b);

  // Multiplication by e^{rate t}.
  ExpPolySum shifted(std::complex<double> rate) const;

  std::complex<double> evaluate(double t) const;

 private:
  std::vector<ExpPolyTerm> terms_;
};

// Integration limits in the single variable t; `horizon` is the fixed upper
// end of the range over which t is used.
enum class Limit { zero, variable, horizon };

// Rates with |rate| < kZeroRate are exactly zero; rates with
// |rate| * horizon < kSeriesRadius are integrated through their Taylor series.
inline constexpr double kZeroRate = 1e-12;
inline constexpr double kSeriesRadius = 0.5;

// int_lower^upper f(u) du as a function of t (Limit::variable).
ExpPolySum iterate_integral(const ExpPolySum& f, Limit lower, Limit upper, double horizon);

}  // namespace ucm
