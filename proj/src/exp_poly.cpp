#include "ucm/exp_poly.hpp"

#include <cmath>

#include "ucm/errors.hpp"

namespace ucm {
namespace {

using cplx = std::complex<double>;

bool same_rate(cplx a, cplx b) {
  return std::abs(a - b) <= 1e-13 * std::max({1.0, std::abs(a), std::abs(b)});
}

cplx canonical_rate(cplx r) { return std::abs(r) < kZeroRate ? cplx(0.0, 0.0) : r; }

// int_0^t u^m e^{rate u} du
ExpPolySum primitive_term(const ExpPolyTerm& term, double horizon) {
  ExpPolySum out;
  const cplx c = term.coeff;
  const cplx lam = term.rate;
  const int m = term.power;
  if (lam == cplx(0.0, 0.0)) {
    out.add(c / static_cast<double>(m + 1), 0.0, m + 1);
    return out;
  }
  const double radius = std::abs(lam) * horizon;
  if (radius < kSeriesRadius) {
    // sum_k lam^k/k! t^{m+k+1}/(m+k+1), at least six orders, until negligible
    cplx lam_k(1.0, 0.0);
    double fact = 1.0;
    double rel = 1.0;
    for (int k = 0; k < 64; ++k) {
      if (k > 0) {
        lam_k *= lam;
        fact *= k;
        rel *= radius / k;
      }
      out.add(c * lam_k / (fact * (m + k + 1)), 0.0, m + k + 1);
      if (k >= 6 && rel < 1e-18) break;
    }
    return out;
  }
  // e^{lam t} sum_k (-1)^k m!/(m-k)! t^{m-k} / lam^{k+1}  -  (-1)^m m! / lam^{m+1}
  double falling = 1.0;  // m!/(m-k)!
  cplx inv_pow = 1.0 / lam;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) {
      falling *= (m - k + 1);
      inv_pow /= lam;
    }
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out.add(c * sign * falling * inv_pow, lam, m - k);
  }
  const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;
  out.add(-c * sign_m * falling * inv_pow, 0.0, 0);
  return out;
}

}  // namespace

ExpPolySum ExpPolySum::constant(cplx c) {
  ExpPolySum s;
  s.add(c, 0.0, 0);
  return s;
}

ExpPolySum ExpPolySum::exponential(cplx rate, cplx coeff) {
  ExpPolySum s;
  s.add(coeff, rate, 0);
  return s;
}

ExpPolySum ExpPolySum::monomial(int power, cplx coeff) {
  ExpPolySum s;
  s.add(coeff, 0.0, power);
  return s;
}

void ExpPolySum::add(cplx coeff, cplx rate, int power) {
  if (power < 0) throw InvalidArgument("negative power in exp-poly term");
  if (!std::isfinite(coeff.real()) || !std::isfinite(coeff.imag()) ||
      !std::isfinite(rate.real()) || !std::isfinite(rate.imag())) {
    throw EvaluationError("non-finite exp-poly term");
  }
  rate = canonical_rate(rate);
  for (auto& t : terms_) {
    if (t.power == power && same_rate(t.rate, rate)) {
      t.coeff += coeff;
      return;
    }
  }
  terms_.push_back({coeff, rate, power});
}

ExpPolySum& ExpPolySum::operator+=(const ExpPolySum& other) {
  for (const auto& t : other.terms_) add(t.coeff, t.rate, t.power);
  return *this;
}

ExpPolySum& ExpPolySum::operator-=(const ExpPolySum& other) {
  for (const auto& t : other.terms_) add(-t.coeff, t.rate, t.power);
  return *this;
}

ExpPolySum& ExpPolySum::operator*=(cplx scalar) {
  for (auto& t : terms_) t.coeff *= scalar;
  return *this;
}

ExpPolySum operator*(const ExpPolySum& a, const ExpPolySum& b) {
  ExpPolySum out;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) out.add(x.coeff * y.coeff, x.rate + y.rate, x.power + y.power);
  }
  return out;
}

ExpPolySum ExpPolySum::shifted(cplx rate) const {
  ExpPolySum out;
  for (const auto& t : terms_) out.add(t.coeff, t.rate + rate, t.power);
  return out;
}

cplx ExpPolySum::evaluate(double t) const {
  cplx acc(0.0, 0.0);
  for (const auto& term : terms_) {
    cplx v = term.coeff;
    if (term.power > 0) v *= std::pow(t, term.power);
    if (term.rate != cplx(0.0, 0.0)) v *= std::exp(term.rate * t);
    acc += v;
  }
  return acc;
}

ExpPolySum iterate_integral(const ExpPolySum& f, Limit lower, Limit upper, double horizon) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw InvalidArgument("horizon must be >= 0");
  if (lower == upper) return {};
  if (lower == Limit::horizon || upper == Limit::zero) {
    // reversed orientation
    ExpPolySum out = iterate_integral(f, upper, lower, horizon);
    out *= -1.0;
    return out;
  }
  ExpPolySum primitive;
  for (const auto& t : f.terms()) primitive += primitive_term(t, horizon);

  if (lower == Limit::zero && upper == Limit::variable) return primitive;
  const ExpPolySum at_end = ExpPolySum::constant(primitive.evaluate(horizon));
  if (lower == Limit::zero) return at_end;  // upper == horizon
  // lower == variable, upper == horizon
  ExpPolySum out = at_end;
  out -= primitive;
  return out;
}

}  // namespace ucm
