#pragma once

#include <iosfwd>
#include <vector>

#include "qracah/hexagon.hpp"

namespace qracah {

// Exponent calculus for the particle-concentration bounds. Every function
// here is piecewise linear, so with a rational exponent offset k it evaluates
// exactly. The big-float instantiation refuses to pick a branch whenever an
// argument sits within tol(30) of a kink; use the rational lane when k is
// rational.
template <class K>
struct ConcentrationParamsT {
  long long T = 0, S = 0, N = 0, t = 0;
  K k{};

  void validate() const {
    if (!(T > S && S > 0 && N > 0))
      throw config_error("hexagon needs T > S > 0, N > 0");
  }
};

using ConcentrationParams = ConcentrationParamsT<Rat>;
using ConcentrationParamsF = ConcentrationParamsT<BigReal>;

// log(-kappa^2)/log q, the exponent k with -kappa^2 = q^k.
BigReal k_exponent(const QKappa& p);

// Log_q of the single-site weight ratio w(x)/w(x+1), up to a bounded factor.
template <class K>
K W_exp(const ConcentrationParamsT<K>& p, long long x);

// Interaction exponent contributed by a background particle at z when a
// particle moves from x to y; antisymmetric in (x, y).
template <class K>
K G_exp(const K& k, long long x, long long y, long long z, long long A);

// Difference of distances to the band midpoint (A - k - 1)/2; positive when
// x sits farther out than y.
template <class K>
K d_dist(const K& k, long long A, long long x, long long y);

struct PackedConfig {
  long long z0 = 0;     // leftmost site
  long long count = 0;  // number of consecutive sites
  std::vector<long long> sites() const;
};

enum class IntervalVariant { I, IPrime };

// The (N-1)-site packed interval around the band midpoint that minimizes the
// interaction sum. The two variants coincide for odd N and differ by a unit
// shift for even N.
template <class K>
PackedConfig minimizing_interval(const ConcentrationParamsT<K>& p, long long A,
                                 IntervalVariant v);

// Full move exponent from x to y: the telescoped weight ratio plus twice the
// interaction sum over the background configuration.
template <class K>
K E_exp(const ConcentrationParamsT<K>& p, long long x, long long y,
        const std::vector<long long>& config);

// Per-step integrand of E_exp against the packed configuration starting at
// z0: summing H_exp between x and y reproduces E_exp exactly.
template <class K>
K H_exp(const ConcentrationParamsT<K>& p, long long u, long long z0);

// The same profile assembled from cumulative distribution functions of five
// unit-density segments; kept as an independent route for cross-checks.
template <class K>
K H_exp_cdf(const ConcentrationParamsT<K>& p, long long u, long long z0);

// Continuum profile: zero across the saturation band, positive below it,
// negative above it. Requires a waterfall slice, t_l < t < t_r.
BigReal H_continuous(const ScaledGeometry& g, const BigReal& t, const BigReal& u);

// 3(x-y)/4 + (1-2x)^- - (1-2y)^-. On the wedge x >= y > 0 this is positive
// exactly over the triangle with vertices (0,0), (4/5,0), (1/2,1/2).
BigReal boundary_inequality_check(const BigReal& x, const BigReal& y);

// Plot-data writers.
void write_g_profile_csv(std::ostream& out, const Rat& k, long long x, long long y,
                         long long A, long long z_lo, long long z_hi);
void write_h_profile_csv(std::ostream& out, const ConcentrationParams& p,
                         long long z0, long long u_lo, long long u_hi);
void write_h_continuous_csv(std::ostream& out, const ScaledGeometry& g,
                            const BigReal& t, const BigReal& u_lo,
                            const BigReal& u_hi, const BigReal& step);
void write_boundary_csv(std::ostream& out, long long grid);

}  // namespace qracah
