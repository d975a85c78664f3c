#pragma once
// Exact extended rationals for residual fractions and surgery coefficients.
// q == 0 encodes +/- infinity (p = +-1); all arithmetic is exact.

#include <gmpxx.h>

#include <string>

#include "blink/planemap.hpp"

namespace blink {

struct Fraction {
  mpz_class p{0};
  mpz_class q{1};

  Fraction() = default;
  Fraction(long np, long nq) : p(np), q(nq) { normalize(); }
  Fraction(mpz_class np, mpz_class nq) : p(std::move(np)), q(std::move(nq)) { normalize(); }

  void normalize() {
    if (q == 0) {
      if (p == 0) throw map_error("BadFraction", "0/0");
      p = (p > 0) ? 1 : -1;
      return;
    }
    if (q < 0) {
      p = -p;
      q = -q;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g > 1) {
      p /= g;
      q /= g;
    }
    if (p == 0) q = 1;
  }

  bool is_infinite() const { return q == 0; }
  bool is_zero() const { return q != 0 && p == 0; }
  bool is_integer() const { return q == 1; }

  bool operator==(const Fraction& o) const { return p == o.p && q == o.q; }

  Fraction operator+(const Fraction& o) const {
    if (is_infinite() || o.is_infinite()) {
      if (is_infinite() && o.is_infinite()) throw map_error("BadFraction", "inf+inf");
      return is_infinite() ? *this : o;
    }
    return Fraction(p * o.q + o.p * q, q * o.q);
  }
  Fraction operator-() const { return Fraction(-p, q); }
  Fraction operator-(const Fraction& o) const { return *this + (-o); }
  Fraction operator*(const Fraction& o) const { return Fraction(p * o.p, q * o.q); }

  // 1/x with 1/0 = inf and 1/inf = 0
  Fraction inverse() const {
    if (is_infinite()) return Fraction(0, 1);
    return Fraction(q, p);
  }

  std::string str() const {
    if (is_infinite()) return (p > 0) ? "1/0" : "-1/0";
    return p.get_str() + "/" + q.get_str();
  }
};

inline Fraction frac_zero() { return Fraction(0, 1); }
inline Fraction frac_inf(int sign = +1) { return Fraction(sign, 0); }

// residual normal form: 0, or p/q with 0<p<q, or +-infinity
inline bool is_residual(const Fraction& f) {
  if (f.is_infinite()) return true;
  if (f.is_zero()) return true;
  return f.p > 0 && f.p < f.q;
}

// split x = n + r with n integer and r residual (0 <= r < 1); infinity maps
// to (0, inf)
inline std::pair<mpz_class, Fraction> residual_split(const Fraction& x) {
  if (x.is_infinite()) return {mpz_class(0), x};
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), x.p.get_mpz_t(), x.q.get_mpz_t());
  Fraction r(x.p - n * x.q, x.q);
  return {n, r};
}

Fraction parse_fraction(const std::string& s);  // "p/q" or integer

}  // namespace blink
