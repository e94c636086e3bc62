#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "qracah/qspecial.hpp"

namespace qracah {

// Local regime of the limiting slice operator, indexed by where the scaled
// observation point sits relative to the saturation band, plus the regime of
// slices outside the waterfall time window.
enum class LimitCase {
  BelowBand,
  LowerBoundary,
  LowerInterior,
  Center,
  UpperInterior,
  UpperBoundary,
  AboveBand,
  OutsideWaterfallSlice,
};

enum class CoeffKind { Diag, OffDiag };

// Closed-form limit of the shifted-and-scaled slice-operator coefficient at
// local offset dx from the anchor point. Diag is the coefficient of g(x) in
// the operator applied at x = anchor + dx; OffDiag is the coupling between
// anchor + dx - 1 and anchor + dx.
BigReal limit_coeff(const QKappa& par, LimitCase c, long long dx, CoeffKind which);

// Limiting center-line operator, tridiagonal on the integers. g[i] holds the
// value at x = x_min + i and is treated as zero outside; the result is on the
// window widened by one site at each end, starting at x_min - 1.
std::vector<BigReal> tctr_apply(const QKappa& par, const std::vector<BigReal>& g,
                                long long x_min);

// Center-line eigenfunctions, n >= 0 and x integers; the eigenvalue under the
// operator above is q^{n+1}.
BigReal gctr(const QKappa& par, long long n, long long x);

// Limiting transfer amplitude at x = two_x / 2; positive, decays at both ends.
BigReal afun(const QKappa& par, long long two_x);

// Limiting inter-slice operator at integer time t. f[i] holds the value at
// two_x = two_x_min + 2*i (consecutive points one unit apart, on either the
// integer or the shifted-by-1/2 grid); the result lives on the same grid and
// gains one site on the right.
std::vector<BigReal> u_barcode_apply(const QKappa& par, long long t,
                                     const std::vector<BigReal>& f, long long two_x_min);

// Orthogonal functions F_n at n = two_n / 2 >= 0, x = two_x / 2, via the
// theta-sum form. Real; the square-root prefactor's radicand exceeds 1 for
// every x. Parameter pairs with |kappa| at an integer power of sqrt(q) make
// the theta denominators vanish and raise config_error.
BigReal F_theta(const QKappa& par, long long two_n, long long two_x);

// Closed-form squared norm of F_n over the integer lattice; the shifted
// lattice gives the same value and the combined half-integer lattice twice it.
BigReal F_norm_sq(const QKappa& par, long long two_n);

// F_n cached on an adaptive window of the half-integer lattice together with
// its norm. The window extends until the squared values drop below
// 10^{-precision-10} times the squared norm; reads beyond it return exact 0.
struct FnFunction {
  long long two_n = 0;
  long long two_x_min = 0;
  std::vector<BigReal> values;  // values[i] at two_x = two_x_min + i
  BigReal norm_sq;

  long long two_x_max() const {
    return two_x_min + static_cast<long long>(values.size()) - 1;
  }
  BigReal at(long long two_x) const;
};

FnFunction build_fn(const QKappa& par, long long two_n);

// Partial sum through n = two_n_max / 2 of sum_n F_n(x) F_n(y) / |F_n|^2.
// Tends to 1_{x=y} when x - y is an integer; across half-parities it tends to
// a nonzero cross value instead (the family is not complete there).
BigReal identity_partial_sum(const QKappa& par, long long two_x, long long two_y,
                             long long two_n_max);

struct BarcodeKernelParams {
  QKappa par;
  long long M = 20;  // partial sums run through n = M + 1/2

  void validate() const;
};

// Evaluator for the limiting barcode kernel partial sums, caching the
// orthogonal-function family behind them. Not safe for concurrent use; build
// one instance per thread.
class BarcodeKernel {
 public:
  explicit BarcodeKernel(BarcodeKernelParams p);
  ~BarcodeKernel();

  const BarcodeKernelParams& params() const { return p_; }

  const FnFunction& fn(long long two_n);

  // Regularized partial sum K(s,t); evaluates the s >= t branch and swaps
  // arguments otherwise, so it is symmetric by construction.
  BigReal eval(long long s, long long t);

  // Alternate pairing: sum through n = M with regularizer q^{(M+1/2)(s-t)}.
  // Approaches the (s+1, t+1) value of the standard pairing.
  BigReal eval_alternate(long long s, long long t);

 private:
  struct Ctx;  // shared theta/Pochhammer caches behind the family

  BigReal half_eval(long long s, long long t, bool alternate);
  BarcodeKernelParams p_;
  std::unique_ptr<Ctx> ctx_;
  std::map<long long, FnFunction> fns_;
};

// One-call forms of the partial sums.
BigReal k_limit(const BarcodeKernelParams& p, long long s, long long t);
BigReal k_limit_alternate(const BarcodeKernelParams& p, long long s, long long t);

// |K_M(s,t) - K_{M-1}(s,t)|, the empirical error proxy for the truncation.
BigReal k_limit_increment(const BarcodeKernelParams& p, long long s, long long t);

// Limiting density pair (even, odd) = (K(0,0), K(1,1)); the two values are
// expected to sum to 1 up to truncation error.
std::pair<BigReal, BigReal> rho_even_odd(const BarcodeKernelParams& p);

// Covariance of the square-lozenge indicators at distance t >= 1: -K(0,t)^2.
BigReal two_point(const BarcodeKernelParams& p, long long t);

// log|K(0,t)| / log q, the decay exponent plotted against the distance.
BigReal decay_exponent(const BarcodeKernelParams& p, long long t);

// Decay-plot table, columns t,log_ratio for t = 1..t_max.
void write_decay_csv(std::ostream& os, const BarcodeKernelParams& p, long long t_max);

// Density scan over the parameter rectangle, columns q,kappa_abs,rho_even.
// Singular parameter pairs are kept in the table with rho_even = nan.
void write_density_surface_csv(std::ostream& os, const BigReal& q_lo,
                               const BigReal& q_hi, const BigReal& kap_lo,
                               const BigReal& kap_hi, const BigReal& step,
                               long long M);

}  // namespace qracah
