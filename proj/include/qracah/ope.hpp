#pragma once

#include <vector>

#include "qracah/hexagon.hpp"
#include "qracah/qspecial.hpp"

namespace qracah {

// Weight on {0,...,M} for the zone's parameter set. Positive throughout the
// tiling parameter regime.
BigReal weight_wqr(const ZoneParams& z, const QKappa& p, long long x);

// Spectral variable q^{-x} + gamma delta q^{x+1}; strictly monotone on [0,M].
BigReal mu(const ZoneParams& z, const QKappa& p, long long x);

// Degree-n orthogonal polynomial value at mu(x), via the terminating 4phi3.
BigReal racah_R(const ZoneParams& z, const QKappa& p, long long n, long long x);

// Squared norm of R_n, closed form.
BigReal hnorm(const ZoneParams& z, const QKappa& p, long long n);

// Eigenvalue of the slice difference operator on the n-th basis function:
// q^{-n}(1-q^n)(1-alpha beta q^{n+1}); zero at n = 0, negative and strictly
// decreasing afterwards.
BigReal eigenvalue_ev(const ZoneParams& z, const QKappa& p, long long n);

// Hypergeometric difference-equation coefficients; B(M) = 0 and D(0) = 0.
BigReal coeff_B(const ZoneParams& z, const QKappa& p, long long x);
BigReal coeff_D(const ZoneParams& z, const QKappa& p, long long x);

// Orthonormal slice basis f_n(x) = R_n(mu(x)) sqrt(w(x)/h_n), cached over
// 0 <= n, x <= M. Index n = M+1 is allowed and returns 0 (the norm diverges
// there, which is what truncates inter-slice transfer).
struct SliceBasis {
  HexagonParams hex;
  QKappa par;
  long long t = 0;
  ZoneParams zone;

  SliceBasis(const HexagonParams& hex_, const QKappa& par_, long long t_);

  long long M() const { return zone.M; }
  const BigReal& w(long long x) const { return w_.at(x); }
  const BigReal& h(long long n) const { return h_.at(n); }
  BigReal f(long long n, long long x) const;

 private:
  std::vector<BigReal> w_, h_;
  std::vector<std::vector<BigReal>> f_;  // f_[n][x]
};

using Matrix = std::vector<std::vector<BigReal>>;

// Fixed-slice correlation kernel K_t(x,y) = sum_{n<N} f_n(x) f_n(y): the
// rank-N orthogonal projection whose diagonal gives particle densities.
Matrix slice_kernel(const SliceBasis& b);

struct TridiagonalOperator {
  std::vector<BigReal> diag;  // diag[x], 0 <= x <= M
  std::vector<BigReal> off;   // off[x] couples x and x+1, 0 <= x < M
  std::size_t size() const { return diag.size(); }
  std::vector<BigReal> apply(const std::vector<BigReal>& v) const;
};

// Symmetric second-order difference operator on the slice, acting on the f
// basis with eigenvalues eigenvalue_ev(n).
TridiagonalOperator build_difference_operator(const SliceBasis& b);

// Shifted and scaled variant: prefactor q^{N+T+(N-|2 floor(L sx)-S-t|)^+}
// times (operator + q^{-N+1}(1-q^{N-1})(q^{-T-N}-1) Id). Requires hex.L.
TridiagonalOperator build_scaled_operator(const SliceBasis& b, const BigReal& sx);

}  // namespace qracah
