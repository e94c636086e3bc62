#include "qracah/ope.hpp"

#include <cstdlib>

namespace qracah {

namespace {

void check_x(const ZoneParams& z, long long x) {
  if (x < 0 || x > z.M) throw config_error("x outside [0, M]");
}

BigReal poch(const QPower& a, const QKappa& p, long long k) {
  return qpoch_finite(a.value(p), p.q, k);
}

}  // namespace

BigReal weight_wqr(const ZoneParams& z, const QKappa& p, long long x) {
  p.validate();
  check_x(z, x);
  const QPower q1 = QPower::q_pow(1);
  const QPower gd = z.gamma * z.delta;
  BigReal num = poch(z.alpha * q1, p, x) * poch(z.beta * z.delta * q1, p, x) *
                poch(z.gamma * q1, p, x) * poch(gd * q1, p, x);
  BigReal den = qpoch_finite(p.q, p.q, x) * poch(gd * q1 / z.alpha, p, x) *
                poch(z.gamma * q1 / z.beta, p, x) * poch(z.delta * q1, p, x);
  BigReal tail = (1 - (gd * QPower::q_pow(2 * x + 1)).value(p)) /
                 ((z.alpha * z.beta * q1).pow_int(x).value(p) *
                  (1 - (gd * q1).value(p)));
  return num / den * tail;
}

BigReal mu(const ZoneParams& z, const QKappa& p, long long x) {
  p.validate();
  return pow(p.q, -x) + (z.gamma * z.delta * QPower::q_pow(x + 1)).value(p);
}

BigReal racah_R(const ZoneParams& z, const QKappa& p, long long n, long long x) {
  if (n < 0 || n > z.M) throw config_error("polynomial degree outside [0, M]");
  const QPower q1 = QPower::q_pow(1);
  std::array<QPower, 4> num = {QPower::q_pow(-n),
                               z.alpha * z.beta * QPower::q_pow(n + 1),
                               QPower::q_pow(-x),
                               z.gamma * z.delta * QPower::q_pow(x + 1)};
  std::array<QPower, 3> den = {z.alpha * q1, z.beta * z.delta * q1, z.gamma * q1};
  return phi43_terminating(num, den, p, p.q);
}

BigReal hnorm(const ZoneParams& z, const QKappa& p, long long n) {
  p.validate();
  if (n < 0 || n > z.M) throw config_error("norm index outside [0, M]");
  const long long M = z.M;
  const QPower q1 = QPower::q_pow(1);
  const QPower ab = z.alpha * z.beta;
  const QPower ad = z.alpha / z.delta;  // alpha delta^{-1}
  BigReal head = poch(ab * QPower::q_pow(2), p, M) *
                 poch(QPower::one() / z.delta, p, M) /
                 (poch(ad * q1, p, M) * poch(z.beta * q1, p, M));
  BigReal mid = (1 - (ab * q1).value(p)) *
                (z.delta * QPower::q_pow(-M)).pow_int(n).value(p) /
                (1 - (ab * QPower::q_pow(2 * n + 1)).value(p));
  BigReal num = qpoch_finite(p.q, p.q, n) * poch(ab * QPower::q_pow(M + 2), p, n) *
                poch(ad * q1, p, n) * poch(z.beta * q1, p, n);
  BigReal den = poch(z.alpha * q1, p, n) * poch(ab * q1, p, n) *
                poch(z.beta * z.delta * q1, p, n) *
                poch(QPower::q_pow(-M), p, n);
  return head * mid * num / den;
}

BigReal eigenvalue_ev(const ZoneParams& z, const QKappa& p, long long n) {
  const QPower ab = z.alpha * z.beta;
  return pow(p.q, -n) * (1 - pow(p.q, n)) * (1 - (ab * QPower::q_pow(n + 1)).value(p));
}

BigReal coeff_B(const ZoneParams& z, const QKappa& p, long long x) {
  check_x(z, x);
  const QPower gd = z.gamma * z.delta;
  auto f1 = [&](const QPower& a, long long e) {
    return 1 - (a * QPower::q_pow(e)).value(p);
  };
  return f1(z.alpha, x + 1) * f1(z.beta * z.delta, x + 1) * f1(z.gamma, x + 1) *
         f1(gd, x + 1) / (f1(gd, 2 * x + 1) * f1(gd, 2 * x + 2));
}

BigReal coeff_D(const ZoneParams& z, const QKappa& p, long long x) {
  check_x(z, x);
  const QPower gd = z.gamma * z.delta;
  auto f1 = [&](const QPower& a, long long e) {
    return 1 - (a * QPower::q_pow(e)).value(p);
  };
  BigReal num = p.q * (1 - pow(p.q, x)) * f1(z.delta, x) *
                (z.beta.value(p) - (z.gamma * QPower::q_pow(x)).value(p)) *
                (z.alpha.value(p) - (gd * QPower::q_pow(x)).value(p));
  return num / (f1(gd, 2 * x) * f1(gd, 2 * x + 1));
}

SliceBasis::SliceBasis(const HexagonParams& hex_, const QKappa& par_, long long t_)
    : hex(hex_), par(par_), t(t_), zone(zone_of(hex_, t_)) {
  par.validate();
  const long long M = zone.M;
  w_.reserve(M + 1);
  h_.reserve(M + 1);
  for (long long x = 0; x <= M; ++x) {
    w_.push_back(weight_wqr(zone, par, x));
    if (!(w_.back() > 0)) throw config_error("weight must be positive on the slice");
  }
  for (long long n = 0; n <= M; ++n) {
    h_.push_back(hnorm(zone, par, n));
    if (!(h_.back() > 0)) throw config_error("squared norm must be positive");
  }
  // f_n(x) = R sqrt(w/h) pairs a heavily cancelling sum with a huge scale
  // factor; the sum needs as many guard digits as that factor has magnitude.
  BigReal wmax = w_[0], hmin = h_[0];
  for (const BigReal& v : w_)
    if (v > wmax) wmax = v;
  for (const BigReal& v : h_)
    if (v < hmin) hmin = v;
  unsigned headroom = 0;
  if (wmax > hmin)
    headroom = 1 + (log10(wmax / hmin) / 2).convert_to<unsigned>();
  PrecisionBump guard(headroom + 40);
  const QKappa lifted{lift(par.q), lift(par.kap)};
  f_.assign(M + 1, std::vector<BigReal>(M + 1));
  for (long long n = 0; n <= M; ++n) {
    BigReal invs = 1 / sqrt(lift(h_[n]));
    for (long long x = 0; x <= M; ++x) {
      BigReal v = racah_R(zone, lifted, n, x) * sqrt(lift(w_[x])) * invs;
      v.precision(guard.saved);
      f_[n][x] = v;
    }
  }
}

BigReal SliceBasis::f(long long n, long long x) const {
  if (x < 0 || x > M()) throw config_error("x outside [0, M]");
  if (n == M() + 1) return BigReal(0);  // norm diverges at n = M+1
  if (n < 0 || n > M()) throw config_error("basis index outside [0, M+1]");
  return f_[n][x];
}

Matrix slice_kernel(const SliceBasis& b) {
  const long long M = b.M(), N = b.hex.N;
  if (N > M + 1) throw config_error("slice kernel needs N <= M+1");
  Matrix K(M + 1, std::vector<BigReal>(M + 1, BigReal(0)));
  for (long long n = 0; n < N; ++n)
    for (long long x = 0; x <= M; ++x) {
      const BigReal fx = b.f(n, x);
      for (long long y = x; y <= M; ++y) K[x][y] += fx * b.f(n, y);
    }
  for (long long x = 0; x <= M; ++x)
    for (long long y = 0; y < x; ++y) K[x][y] = K[y][x];
  return K;
}

std::vector<BigReal> TridiagonalOperator::apply(const std::vector<BigReal>& v) const {
  const std::size_t n = diag.size();
  if (v.size() != n) throw config_error("operator/vector size mismatch");
  std::vector<BigReal> r(n, BigReal(0));
  for (std::size_t x = 0; x < n; ++x) {
    r[x] = diag[x] * v[x];
    if (x + 1 < n) r[x] += off[x] * v[x + 1];
    if (x > 0) r[x] += off[x - 1] * v[x - 1];
  }
  return r;
}

TridiagonalOperator build_difference_operator(const SliceBasis& b) {
  const long long M = b.M();
  TridiagonalOperator op;
  op.diag.reserve(M + 1);
  op.off.reserve(M);
  for (long long x = 0; x <= M; ++x)
    op.diag.push_back(-coeff_B(b.zone, b.par, x) - coeff_D(b.zone, b.par, x));
  for (long long x = 0; x < M; ++x) {
    BigReal ratio = b.w(x) / b.w(x + 1);
    if (!(ratio > 0)) throw config_error("weight ratio must be positive");
    op.off.push_back(sqrt(ratio) * coeff_B(b.zone, b.par, x));
  }
  return op;
}

TridiagonalOperator build_scaled_operator(const SliceBasis& b, const BigReal& sx) {
  if (!b.hex.L) throw config_error("scaled operator needs the canonical scale L");
  const long long L = *b.hex.L, S = b.hex.S, N = b.hex.N, T = b.hex.T;
  long long fl = floor(L * sx).convert_to<long long>();
  long long band = N - std::llabs(2 * fl - S - b.t);
  if (band < 0) band = 0;
  const BigReal C = pow(b.par.q, N + T + band);
  const BigReal shift =
      pow(b.par.q, -N + 1) * (1 - pow(b.par.q, N - 1)) * (pow(b.par.q, -T - N) - 1);
  TridiagonalOperator op = build_difference_operator(b);
  for (auto& d : op.diag) d = C * (d + shift);
  for (auto& o : op.off) o = C * o;
  return op;
}

}  // namespace qracah
