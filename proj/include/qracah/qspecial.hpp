#pragma once

#include <array>

#include "qracah/qpower.hpp"

namespace qracah {

// (a;q)_k = prod_{j=0}^{k-1} (1 - a q^j); k >= 0.
BigReal qpoch_finite(const BigReal& a, const BigReal& q, long long k);
inline BigReal qpoch_finite(const QPower& a, const QKappa& p, long long k) {
  return qpoch_finite(a.value(p), p.q, k);
}

// (a;q)_inf, 0 < q < 1. Truncated once the log-tail bound drops below the
// working precision.
BigReal qpoch_infinite(const BigReal& a, const BigReal& q);

// Jacobi theta, theta_q(z) = (z;q)_inf (q/z;q)_inf. Real z != 0.
// Large and small |z| are reduced into [sqrt(q), 1/sqrt(q)) via
// theta_q(q^m z) = (-1)^m q^{-m(m-1)/2} z^{-m} theta_q(z).
BigReal theta(const BigReal& q, const BigReal& z);
BigComplex theta(const BigReal& q, const BigComplex& z);

// Independent route for cross-checks: the Laurent series
// theta_q(z) = (q;q)_inf^{-1} sum_m (-1)^m q^{m(m-1)/2} z^m.
BigReal theta_series(const BigReal& q, const BigReal& z);

// Terminating 4phi3 at argument z. num[0] must be q^{-n} with integer n >= 0;
// the sum runs through k = n. Parameters are exact monomials so the
// termination test and forbidden denominator cancellations are decided
// symbolically.
BigReal phi43_terminating(const std::array<QPower, 4>& num,
                          const std::array<QPower, 3>& den, const QKappa& p,
                          const BigReal& z);

// Continuous q^{-1}-Hermite H_n(lam | q^{-1}) via its terminating 2phi0 form.
// lam != 0 (the |lam|->0 direction is never needed and the 2phi0 form blows up).
BigReal cont_qinv_hermite(long long n, const BigReal& lam, const BigReal& q);

}  // namespace qracah
