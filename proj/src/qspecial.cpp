#include "qracah/qspecial.hpp"

#include <cmath>
#include <cstdlib>

namespace qracah {

namespace {

void check_q(const BigReal& q) {
  if (!(q > 0) || !(q < 1)) throw config_error("q must lie in (0,1)");
}

// Smallest |a q^k| at which the infinite-product tail can be dropped:
// for |a q^k| <= 1/2 the remaining log-tail is bounded by 2|a q^k|/(1-q).
BigReal tail_cutoff(const BigReal& q) { return tol(-5) * (1 - q) / 4; }

constexpr long long kIterGuard = 50'000'000;

BigComplex cpow_int(BigComplex b, long long e) {
  bool inv = e < 0;
  unsigned long long n = inv ? -(unsigned long long)e : (unsigned long long)e;
  BigComplex r{BigReal(1), BigReal(0)};
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  if (inv) r = BigComplex{BigReal(1), BigReal(0)} / r;
  return r;
}

}  // namespace

BigReal qpoch_finite(const BigReal& a, const BigReal& q, long long k) {
  if (k < 0) throw config_error("qpoch_finite: negative length");
  BigReal prod(1), aqj = a;
  for (long long j = 0; j < k; ++j) {
    prod *= 1 - aqj;
    if (prod == 0) return prod;
    aqj *= q;
  }
  return prod;
}

BigReal qpoch_infinite(const BigReal& a, const BigReal& q) {
  check_q(q);
  if (a == 0) return BigReal(1);
  const BigReal cutoff = tail_cutoff(q);
  const BigReal half = BigReal(1) / 2;
  BigReal prod(1), aqk = a;
  long long k = 0;
  while (abs(aqk) > half || abs(aqk) > cutoff) {
    prod *= 1 - aqk;
    if (prod == 0) return prod;
    aqk *= q;
    if (++k > kIterGuard) throw size_guard_error("qpoch_infinite: did not converge");
  }
  return prod;
}

BigReal theta(const BigReal& q, const BigReal& z) {
  check_q(q);
  if (z == 0) throw config_error("theta: z must be nonzero");
  PrecisionBump guard(15);  // absorbs factor-accumulation rounding at q near 1
  BigReal qh = lift(q), zh = lift(z);
  // Pull z into [sqrt(q), 1/sqrt(q)) with theta(q^m z0) = (-1)^m q^{-m(m-1)/2} z0^{-m} theta(z0).
  long long m = std::llround(static_cast<double>(log(abs(zh)) / log(qh)));
  BigReal z0 = zh * pow(qh, -m);
  BigReal f0 = 1 - z0;  // peeled so a zero of theta at z = q^m comes out exact
  if (f0 == 0) return f0;
  BigReal prod = f0 * qpoch_infinite(z0 * qh, qh) * qpoch_infinite(qh / z0, qh);
  BigReal pref = pow(qh, -(m * (m - 1)) / 2) * ipow(z0, -m);
  if (m % 2 != 0) pref = -pref;
  BigReal out = pref * prod;
  out.precision(guard.saved);
  return out;
}

BigComplex theta(const BigReal& q, const BigComplex& z) {
  check_q(q);
  BigReal az = abs(z);
  if (az == 0) throw config_error("theta: z must be nonzero");
  PrecisionBump guard(15);
  BigReal qh = lift(q);
  BigComplex zh{lift(z.re), lift(z.im)};
  long long m = std::llround(static_cast<double>(log(az) / log(qh)));
  BigReal scale = pow(qh, -m);
  BigComplex z0{zh.re * scale, zh.im * scale};

  auto cpoch_inf = [&](BigComplex a) {
    const BigReal cutoff = tail_cutoff(qh);
    const BigReal half = BigReal(1) / 2;
    BigComplex prod{BigReal(1), BigReal(0)};
    BigReal mag = abs(a);
    long long k = 0;
    while (mag > half || mag > cutoff) {
      prod *= BigComplex{1 - a.re, -a.im};
      a.re *= qh;
      a.im *= qh;
      mag *= qh;
      if (++k > kIterGuard) throw size_guard_error("theta: did not converge");
    }
    return prod;
  };

  BigComplex prod = cpoch_inf(z0) * cpoch_inf(BigComplex{qh, BigReal(0)} / z0);
  BigReal pref = pow(qh, -(m * (m - 1)) / 2);
  if (m % 2 != 0) pref = -pref;
  BigComplex zpow = cpow_int(z0, -m);
  BigComplex out = BigComplex{pref * zpow.re, pref * zpow.im} * prod;
  out.re.precision(guard.saved);
  out.im.precision(guard.saved);
  return out;
}

BigReal theta_series(const BigReal& q, const BigReal& z) {
  check_q(q);
  if (z == 0) throw config_error("theta_series: z must be nonzero");
  // The alternating sum cancels down to ~theta * (q;q)_inf and is then divided
  // by (q;q)_inf, which for q near 1 amplifies absolute rounding error a lot.
  PrecisionBump guard(35);
  BigReal qh = lift(q), zh = lift(z);
  const BigReal eps = tol(-8);
  // ascending branch: term ratio T_{m+1}/T_m = -q^m z
  BigReal sum(0);
  {
    BigReal term(1), ratio = -zh;
    long long k = 0;
    while (true) {
      sum += term;
      term *= ratio;
      ratio *= qh;
      if (abs(ratio) < 1 && abs(term) < eps * (1 + abs(sum))) break;
      if (++k > kIterGuard) throw size_guard_error("theta_series: did not converge");
    }
  }
  // descending branch: T_{m-1}/T_m = -q^{1-m}/z, starting below m = 0
  {
    BigReal term(1), ratio = -qh / zh;
    long long k = 0;
    while (true) {
      term *= ratio;
      ratio *= qh;
      sum += term;
      if (abs(ratio) < 1 && abs(term) < eps * (1 + abs(sum))) break;
      if (++k > kIterGuard) throw size_guard_error("theta_series: did not converge");
    }
  }
  BigReal out = sum / qpoch_infinite(qh, qh);
  out.precision(guard.saved);
  return out;
}

BigReal phi43_terminating(const std::array<QPower, 4>& num,
                          const std::array<QPower, 3>& den, const QKappa& p,
                          const BigReal& z) {
  p.validate();
  if (!num[0].is_q_neg_int())
    throw config_error("phi43: first numerator parameter must be q^{-n}, n >= 0");
  const long long n = -num[0].q_exp.numerator();
  if (n > 2'000'000) throw size_guard_error("phi43: termination index too large");

  // A denominator parameter equal to q^{-k} for 0 <= k < n makes a later term
  // divide by zero; decide this exactly on the monomials.
  for (const auto& d : den) {
    if (d.sign == 1 && d.kappa_exp == 0 && d.q_exp.denominator() == 1) {
      long long kk = -d.q_exp.numerator();
      if (kk >= 0 && kk < n)
        throw config_error("phi43: denominator parameter hits a pole before termination");
    }
  }

  std::array<BigReal, 4> nv;
  std::array<BigReal, 3> dv;
  for (int j = 0; j < 4; ++j) nv[j] = num[j].value(p);
  for (int j = 0; j < 3; ++j) dv[j] = den[j].value(p);

  BigReal sum(1), term(1), qk(1);
  for (long long k = 0; k < n; ++k) {
    BigReal r = z;
    for (int j = 0; j < 4; ++j) r *= 1 - nv[j] * qk;
    r /= 1 - p.q * qk;
    for (int j = 0; j < 3; ++j) r /= 1 - dv[j] * qk;
    term *= r;
    sum += term;
    if (term == 0) break;
    qk *= p.q;
  }
  return sum;
}

BigReal cont_qinv_hermite(long long n, const BigReal& lam, const BigReal& q) {
  check_q(q);
  if (n < 0) throw config_error("cont_qinv_hermite: n must be >= 0");
  if (lam == 0) throw config_error("cont_qinv_hermite: lam must be nonzero");
  if (n > 2'000'000) throw size_guard_error("cont_qinv_hermite: n too large");
  const BigReal b = 1 / q;
  const BigReal lam2 = lam * lam;
  // H_n(lam | b) = lam^{-n} sum_k (b^{-n};b)_k / (b;b)_k (-1)^k b^{-k(k-1)/2} (lam^2 b^n)^k
  BigReal sum(1), term(1);
  BigReal bkmn = pow(b, -n);  // b^{k-n}
  BigReal bk1 = b;            // b^{k+1}
  BigReal bnmk = pow(b, n);   // b^{n-k}
  for (long long k = 0; k < n; ++k) {
    term *= (1 - bkmn) / (1 - bk1) * (-lam2 * bnmk);
    sum += term;
    bkmn *= b;
    bk1 *= b;
    bnmk /= b;
  }
  return ipow(lam, -n) * sum;
}

}  // namespace qracah
