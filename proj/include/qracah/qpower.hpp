#pragma once

#include <boost/rational.hpp>

#include "qracah/bigreal.hpp"

namespace qracah {

using Rat = boost::rational<long long>;

// Measure parameters. kappa is purely imaginary, kappa = i*|kappa| with
// |kappa| > 0, so kappa^2 = -|kappa|^2 is a negative real and all weights
// stay real. Code passes |kappa| around and tracks phases i^m separately.
struct QKappa {
  BigReal q;
  BigReal kap;  // |kappa|

  BigReal kap2() const { return -kap * kap; }  // kappa^2, negative

  void validate() const {
    if (!(q > 0) || !(q < 1)) throw config_error("q must lie in (0,1)");
    if (!(kap > 0)) throw config_error("|kappa| must be positive");
  }
};

// Exact monomial sign * |kappa|^kappa_exp * q^q_exp with a rational q-exponent.
// Parameter lists are built symbolically out of these so that termination and
// cancellation conditions can be decided exactly; numbers are materialized
// only at the final evaluation step.
struct QPower {
  int sign = 1;  // +1 or -1
  long long kappa_exp = 0;
  Rat q_exp{0};

  static QPower one() { return {}; }
  static QPower q_pow(Rat e) { return {1, 0, e}; }
  static QPower q_pow(long long e) { return {1, 0, Rat(e)}; }
  // kappa^2 * q^e  (kappa^2 = -|kappa|^2)
  static QPower kappa2_q_pow(Rat e) { return {-1, 2, e}; }
  static QPower kappa2_q_pow(long long e) { return {-1, 2, Rat(e)}; }

  QPower operator*(const QPower& o) const {
    return {sign * o.sign, kappa_exp + o.kappa_exp, q_exp + o.q_exp};
  }
  QPower operator/(const QPower& o) const {
    return {sign * o.sign, kappa_exp - o.kappa_exp, q_exp - o.q_exp};
  }
  QPower operator-() const { return {-sign, kappa_exp, q_exp}; }

  QPower pow_int(long long e) const {
    int s = (sign < 0 && e % 2 != 0) ? -1 : 1;
    return {s, kappa_exp * e, q_exp * Rat(e)};
  }

  bool operator==(const QPower& o) const {
    return sign == o.sign && kappa_exp == o.kappa_exp && q_exp == o.q_exp;
  }

  bool is_one() const { return sign == 1 && kappa_exp == 0 && q_exp == Rat(0); }

  // True when the monomial is a plain q^{-n} with integer n >= 0.
  bool is_q_neg_int() const {
    return sign == 1 && kappa_exp == 0 && q_exp.denominator() == 1 &&
           q_exp.numerator() <= 0;
  }

  BigReal value(const QKappa& p) const;
};

// q^e with e rational; only dyadic exponents occur (integers, halves, and
// quarters), handled by repeated square roots of the base.
inline BigReal pow_rat(const BigReal& q, const Rat& e) {
  BigReal base = q;
  long long den = e.denominator();
  while (den % 2 == 0) {
    base = sqrt(base);
    den /= 2;
  }
  if (den != 1) throw config_error("q-exponent denominator must be a power of two");
  return pow(base, e.numerator());
}

inline BigReal QPower::value(const QKappa& p) const {
  BigReal v = pow_rat(p.q, q_exp);
  if (kappa_exp != 0) v *= pow(p.kap, kappa_exp);
  return sign < 0 ? BigReal(-v) : v;
}

}  // namespace qracah
