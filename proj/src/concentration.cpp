#include "qracah/concentration.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace qracah {

namespace {

// Rational lane: branches are decided exactly; ties are harmless because the
// functions are continuous across every kink.
Rat checked_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
Rat pos_part(const Rat& a) { return a > Rat(0) ? a : Rat(0); }
Rat neg_part(const Rat& a) { return a < Rat(0) ? a : Rat(0); }
Rat abs_val(const Rat& a) { return a < Rat(0) ? -a : a; }

// Big-float lane: an inexact exponent cannot be trusted to land on the right
// side of a kink, so near-ties are rejected instead of silently resolved.
[[noreturn]] void kink() {
  throw config_error(
      "piecewise branch within tolerance of a kink; use a rational exponent");
}

BigReal checked_min(const BigReal& a, const BigReal& b) {
  if (abs(a - b) < tol(30)) kink();
  return a < b ? a : b;
}
BigReal pos_part(const BigReal& a) {
  if (abs(a) < tol(30)) kink();
  return a > 0 ? a : BigReal(0);
}
BigReal neg_part(const BigReal& a) {
  if (abs(a) < tol(30)) kink();
  return a < 0 ? a : BigReal(0);
}
BigReal abs_val(const BigReal& a) {
  if (abs(a) < tol(30)) kink();
  return abs(a);
}

long long rfloor(const Rat& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}
long long rfloor(const BigReal& x) {
  BigReal f = floor(x);
  if (x - f < tol(30) || f + 1 - x < tol(30)) kink();
  return f.convert_to<long long>();
}

// Mass below u of the unit-density Lebesgue measure on [a, b].
template <class K>
K cdf_seg(const K& a, const K& b, const K& u) {
  return checked_min(pos_part(u - a), K(b - a));
}

BigReal rat_to_big(const Rat& r) {
  return BigReal(r.numerator()) / r.denominator();
}

}  // namespace

BigReal k_exponent(const QKappa& p) {
  p.validate();
  return 2 * log(p.kap) / log(p.q);
}

template <class K>
K W_exp(const ConcentrationParamsT<K>& p, long long x) {
  p.validate();
  const K& k = p.k;
  return K(p.S + p.t - 2 * x - 1) +
         checked_min(K(p.S), K(p.N + x + 1) + k) +
         checked_min(K(p.t), K(p.N + x + 1) + k) +
         checked_min(K(p.S + p.t), K(2 * x + 1) + k) -
         checked_min(K(p.T), K(x + 1) + k) -
         checked_min(K(p.S + p.t), K(x + 1) + k) -
         checked_min(K(p.S + p.t), K(2 * x + 3) + k);
}

template <class K>
K G_exp(const K& k, long long x, long long y, long long z, long long A) {
  return neg_part(K(z - x)) + neg_part(K(z - A + x + 1) + k) -
         neg_part(K(z - y)) - neg_part(K(z - A + y + 1) + k);
}

template <class K>
K d_dist(const K& k, long long A, long long x, long long y) {
  K m = (K(A) - k - K(1)) / 2;
  return abs_val(K(x) - m) - abs_val(K(y) - m);
}

std::vector<long long> PackedConfig::sites() const {
  std::vector<long long> v;
  v.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) v.push_back(z0 + i);
  return v;
}

template <class K>
PackedConfig minimizing_interval(const ConcentrationParamsT<K>& p, long long A,
                                 IntervalVariant v) {
  p.validate();
  long long m = rfloor((K(A) - p.k - K(1)) / 2);
  long long half = (v == IntervalVariant::I) ? (p.N - 1) / 2 : p.N / 2;
  return {m - half + 1, p.N - 1};
}

template <class K>
K E_exp(const ConcentrationParamsT<K>& p, long long x, long long y,
        const std::vector<long long>& config) {
  p.validate();
  for (long long z : config)
    if (z == x || z == y)
      throw config_error("background configuration overlaps the moved pair");
  K acc{};
  for (long long u = std::min(x, y); u < std::max(x, y); ++u) acc += W_exp(p, u);
  K e = (x > y) ? K(-acc) : acc;
  for (long long z : config) e += 2 * G_exp(p.k, x, y, z, p.S + p.t);
  return e;
}

template <class K>
K H_exp(const ConcentrationParamsT<K>& p, long long u, long long z0) {
  p.validate();
  const K& k = p.k;
  return W_exp(p, u) +
         2 * (neg_part(K(z0 - p.S - p.t + u + 1) + k) -
              neg_part(K(z0 - u - 1)) -
              neg_part(K(z0 - p.S - p.t + u + p.N) + k) +
              neg_part(K(z0 - u + p.N - 2)));
}

template <class K>
K H_exp_cdf(const ConcentrationParamsT<K>& p, long long u, long long z0) {
  p.validate();
  const K& k = p.k;
  const K U(u);
  K mid = (K(p.S + p.t - 1) - k) / 2;
  return K(p.S + p.t - 2 * u - 1) -
         cdf_seg(K(p.S - p.N - 1) - k, K(p.T - 1) - k, U) -
         cdf_seg(K(p.t - p.N - 1) - k, K(p.t + p.S - 1) - k, U) +
         2 * cdf_seg(K(z0 - 1), K(z0 + p.N - 2), U) +
         2 * cdf_seg(K(p.S + p.t - p.N) - k - K(z0),
                     K(p.S + p.t - 1) - k - K(z0), U) +
         2 * cdf_seg(K(mid - 1), mid, U);
}

BigReal H_continuous(const ScaledGeometry& g, const BigReal& t, const BigReal& u) {
  if (!g.waterfall_nonempty() || !(g.t_l() < t) || !(t < g.t_r()))
    throw config_error("slice is outside the waterfall band");
  auto seg = [](const BigReal& a, const BigReal& b, const BigReal& u) {
    BigReal v = u - a;
    if (v < 0) return BigReal(0);
    BigReal len = b - a;
    return v < len ? v : len;
  };
  return g.S + t - 2 * u - seg(g.S - g.N, g.T, u) - seg(t - g.N, t + g.S, u) +
         4 * seg((g.S + t - g.N) / 2, (g.S + t + g.N) / 2, u);
}

BigReal boundary_inequality_check(const BigReal& x, const BigReal& y) {
  auto neg = [](const BigReal& a) { return a < 0 ? a : BigReal(0); };
  return 3 * (x - y) / 4 + neg(1 - 2 * x) - neg(1 - 2 * y);
}

void write_g_profile_csv(std::ostream& out, const Rat& k, long long x, long long y,
                         long long A, long long z_lo, long long z_hi) {
  if (z_lo > z_hi) throw config_error("empty z range");
  out << "z,g\n";
  for (long long z = z_lo; z <= z_hi; ++z)
    out << z << ',' << std::scientific << std::setprecision(29)
        << rat_to_big(G_exp(k, x, y, z, A)) << '\n';
}

void write_h_profile_csv(std::ostream& out, const ConcentrationParams& p,
                         long long z0, long long u_lo, long long u_hi) {
  if (u_lo > u_hi) throw config_error("empty u range");
  out << "u,h\n";
  for (long long u = u_lo; u <= u_hi; ++u)
    out << u << ',' << std::scientific << std::setprecision(29)
        << rat_to_big(H_exp(p, u, z0)) << '\n';
}

void write_h_continuous_csv(std::ostream& out, const ScaledGeometry& g,
                            const BigReal& t, const BigReal& u_lo,
                            const BigReal& u_hi, const BigReal& step) {
  if (!(step > 0) || !(u_lo <= u_hi)) throw config_error("bad u grid");
  if (((u_hi - u_lo) / step).convert_to<double>() + 1 > 100000)
    throw size_guard_error("u grid too fine");
  out << "u,h\n";
  for (BigReal u = u_lo; u <= u_hi; u += step)
    out << std::defaultfloat << std::setprecision(17) << u << ','
        << std::scientific << std::setprecision(29) << H_continuous(g, t, u)
        << '\n';
}

void write_boundary_csv(std::ostream& out, long long grid) {
  if (grid < 1) throw config_error("grid must be positive");
  if ((grid + 1) * (grid + 2) / 2 > 100000) throw size_guard_error("grid too fine");
  out << "x,y,value\n";
  for (long long i = 0; i <= grid; ++i)
    for (long long j = 0; j <= i; ++j) {
      BigReal x = BigReal(i) / grid, y = BigReal(j) / grid;
      out << std::defaultfloat << std::setprecision(17) << x << ',' << y << ','
          << std::scientific << std::setprecision(29)
          << boundary_inequality_check(x, y) << '\n';
    }
}

template Rat W_exp<Rat>(const ConcentrationParamsT<Rat>&, long long);
template BigReal W_exp<BigReal>(const ConcentrationParamsT<BigReal>&, long long);
template Rat G_exp<Rat>(const Rat&, long long, long long, long long, long long);
template BigReal G_exp<BigReal>(const BigReal&, long long, long long, long long,
                                long long);
template Rat d_dist<Rat>(const Rat&, long long, long long, long long);
template BigReal d_dist<BigReal>(const BigReal&, long long, long long, long long);
template PackedConfig minimizing_interval<Rat>(const ConcentrationParamsT<Rat>&,
                                               long long, IntervalVariant);
template PackedConfig minimizing_interval<BigReal>(
    const ConcentrationParamsT<BigReal>&, long long, IntervalVariant);
template Rat E_exp<Rat>(const ConcentrationParamsT<Rat>&, long long, long long,
                        const std::vector<long long>&);
template BigReal E_exp<BigReal>(const ConcentrationParamsT<BigReal>&, long long,
                                long long, const std::vector<long long>&);
template Rat H_exp<Rat>(const ConcentrationParamsT<Rat>&, long long, long long);
template BigReal H_exp<BigReal>(const ConcentrationParamsT<BigReal>&, long long,
                                long long);
template Rat H_exp_cdf<Rat>(const ConcentrationParamsT<Rat>&, long long, long long);
template BigReal H_exp_cdf<BigReal>(const ConcentrationParamsT<BigReal>&, long long,
                                    long long);

}  // namespace qracah
