#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qracah/ope.hpp"

namespace qracah {

// Transfer coefficient linking the slice-t and slice-(t+1) orthonormal bases:
// ((q^{n-t-N}-1)(1-q^{T+N-t-n-1}))^{1/2}. Vanishes exactly at n = N+t, which
// truncates every inter-slice sum to finitely many terms.
BigReal c_tilde(const HexagonParams& hex, const QKappa& par, long long n, long long t);

// Horizontal-lozenge weight kappa q^{j-(S+1)/2} - 1/(kappa q^{j-(S+1)/2}) at
// half-integer j. Purely imaginary with positive imaginary part when kappa
// lies on the positive imaginary axis.
BigComplex w_lozenge(const QKappa& par, long long S, const Rat& j);

// One-step transfer operator from functions on slice t to functions on slice
// t+1: (U f)(y) = u1[y-1] f(y-1) + u0[y] f(y). Acting on the orthonormal
// basis it gives U f_n = c_tilde(n,t) f_n^{t+1}.
struct InterSliceOp {
  long long t = 0;
  std::vector<BigReal> u0, u1;  // indexed by x on slice t
  std::vector<BigReal> apply(const std::vector<BigReal>& f) const;
};

// Per-slice gauge data. wtilde is the rescaled slice weight (positive, equal
// to (-1)^t lambda(t) w_t(x)); glog[x] is log|G(t,x)| for the conjugation
// factor G, whose phase is i^{-t} (-1)^{S+N-1} independently of x. Only
// G-ratios enter results, so the x-independent phase part never materializes.
struct GaugeSlice {
  BigReal lambda;
  std::vector<BigReal> wtilde;
  std::vector<BigReal> glog;
};

// Space-time kernel machinery restricted to slices of the first parameter
// zone (t <= min(S, T-S) - 1), where every slice is {0,...,N+t-1}. Caches
// per-slice bases and gauge tables; not safe for concurrent use, build one
// instance per thread instead.
class Kernel2D {
 public:
  Kernel2D(HexagonParams hex, QKappa par);

  const HexagonParams& hex() const { return hex_; }
  const QKappa& par() const { return par_; }
  long long max_slice() const;  // last slice index inside the zone

  const SliceBasis& basis(long long t);
  const GaugeSlice& gauge(long long t);
  InterSliceOp transfer(long long t);

  // Space-time correlation kernel of the non-horizontal lozenges,
  // K(s,x;t,y). Determinants over point sets give joint densities.
  BigReal kernel(long long s, long long x, long long t, long long y);

  // Inverse Kasteleyn matrix entry for black triangle (s,x) against white
  // triangle (t,y); carries the exact phase i^{t-s-1} times a real value.
  BigComplex kast_inv(long long s, long long x, long long t, long long y);

  // Conjugated pre-limit barcode kernel on the canonical hexagon:
  // i^{t-s} q^{2L(s-t)} kast_inv(2L+s, 3L; 2L+t-1, 3L). The phases cancel to
  // (-1)^{t-s-1}, making the value real; a residual imaginary part beyond
  // rounding noise signals a phase bug and raises an error.
  BigReal prelimit_barcode(long long s, long long t);

  // P{square lozenges at (2L+t_i, 3L) for all i} as a determinant of the
  // barcode kernel. Evaluated on the conjugated kernel: the conjugation is
  // diagonal, so determinants are unchanged.
  BigReal square_lozenge_probability(const std::vector<long long>& ts);

 private:
  void require_slice(long long t) const;
  HexagonParams hex_;
  QKappa par_;
  std::map<long long, SliceBasis> bases_;
  std::map<long long, GaugeSlice> gauges_;
};

// Determinant by Gaussian elimination with partial pivoting.
BigReal determinant(Matrix a);

// Kernel-matrix export, values in scientific notation at 30 significant
// digits. Labels name the lattice points behind each row/column.
void write_matrix_csv(std::ostream& os, const Matrix& m,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels);
void write_matrix_json(std::ostream& os, const Matrix& m,
                       const std::vector<std::string>& row_labels,
                       const std::vector<std::string>& col_labels);

}  // namespace qracah
