#include "qracah/kernels2d.hpp"

#include <iomanip>
#include <ostream>
#include <utility>

namespace qracah {

namespace {

// Rescaled slice weight in the transfer gauge. The sign prefactor cancels
// against the two descending-base Pochhammers, so the value is positive.
BigReal wtilde_value(const HexagonParams& hx, const QKappa& p, long long t, long long x) {
  const BigReal& q = p.q;
  const BigReal k2 = p.kap2();
  const BigReal qi = 1 / q;
  BigReal num = ipow(q, x * (2 * hx.N + hx.T - 1)) * (1 - k2 * ipow(q, 2 * x - t - hx.S + 1));
  BigReal den = qpoch_finite(q, q, x) * qpoch_finite(q, q, hx.T - hx.S - t + x) *
                qpoch_finite(qi, qi, t + hx.N - x - 1) *
                qpoch_finite(qi, qi, hx.S + hx.N - x - 1) *
                qpoch_finite(k2 * ipow(q, x - hx.T + 1), q, hx.T + hx.N - t) *
                qpoch_finite(k2 * ipow(q, x - t - hx.S + 1), q, hx.N + t);
  BigReal v = num / den;
  if ((t + hx.S) % 2 != 0) v = -v;
  return v;
}

// Ratio of the gauge weight to the plain slice weight, divided by (-1)^t.
// Only the first line depends on t; the rest is kept for completeness.
BigReal lambda_value(const HexagonParams& hx, const QKappa& p, long long t) {
  const BigReal& q = p.q;
  const BigReal k2 = p.kap2();
  const BigReal qi = 1 / q;
  BigReal tdep = ipow(q, t * (2 * hx.N + t - 1) / 2) *
                 qpoch_finite(k2 * ipow(q, hx.N), qi, t) *
                 qpoch_finite(ipow(q, hx.T - hx.S), qi, t) /
                 (qpoch_finite(ipow(q, hx.N), q, t) *
                  qpoch_finite(k2 * ipow(q, 1 - hx.S), qi, t));
  if (t % 2 != 0) tdep = -tdep;
  BigReal cons = (1 - k2 * ipow(q, 1 - hx.S)) /
                 (qpoch_finite(qi, qi, hx.N - 1) * qpoch_finite(qi, qi, hx.N + hx.S - 1) *
                  qpoch_finite(q, q, hx.T - hx.S) *
                  qpoch_finite(k2 * ipow(q, 1 - hx.S), q, hx.N) *
                  qpoch_finite(k2 * ipow(q, 1 - hx.T), q, hx.N + hx.T));
  if (hx.S % 2 != 0) cons = -cons;
  return tdep * cons;
}

// log|G(t,x)|, accumulated factor by factor so the huge Pochhammer
// denominators never materialize as values. The phase of G is
// i^{-t} (-1)^{S+N-1}, independent of x; callers only ever form G-ratios.
BigReal glog_value(const HexagonParams& hx, const QKappa& p, long long t, long long x,
                   const BigReal& wt) {
  const BigReal& q = p.q;
  const BigReal k2abs = p.kap * p.kap;
  BigReal e = BigReal(x) * (hx.T + hx.N - t - 1) + BigReal(t) * (hx.S - 1) / 2 +
              BigReal(t * (t + 1)) / 4;
  BigReal acc = e * log(q) - t * log(p.kap);
  acc += log(1 + k2abs * ipow(q, 2 * x - t - hx.S + 1));
  BigReal qe(1);
  for (long long j = 1; j <= hx.S + hx.N - 1 - x; ++j) {
    qe /= q;
    acc -= log(qe - 1);
  }
  qe = 1;
  for (long long j = 1; j <= hx.T - hx.S + x - t; ++j) {
    qe *= q;
    acc -= log(1 - qe);
  }
  qe = ipow(q, x - hx.T + 1);
  for (long long j = 0; j < hx.T + hx.N - t; ++j) {
    acc -= log(1 + k2abs * qe);
    qe *= q;
  }
  acc -= log(wt) / 2;
  return acc;
}

BigReal a0_coeff(const HexagonParams& hx, const QKappa& p, long long t, long long x) {
  const BigReal& q = p.q;
  const BigReal k2 = p.kap2();
  return (1 - ipow(q, x + hx.T - t - hx.S)) * (1 - k2 * ipow(q, x + hx.N - t)) /
         (1 - k2 * ipow(q, 2 * x - t - hx.S + 1));
}

BigReal a1_coeff(const HexagonParams& hx, const QKappa& p, long long t, long long x) {
  const BigReal& q = p.q;
  const BigReal k2 = p.kap2();
  return ipow(q, hx.T + hx.N - 1 - t) * (ipow(q, x - hx.S - hx.N + 1) - 1) *
         (1 - k2 * ipow(q, x - hx.T + 1)) / (1 - k2 * ipow(q, 2 * x - t - hx.S + 1));
}

}  // namespace

BigReal c_tilde(const HexagonParams& hex, const QKappa& par, long long n, long long t) {
  if (n < 0) throw config_error("transfer coefficient needs n >= 0");
  BigReal rad =
      (ipow(par.q, n - t - hex.N) - 1) * (1 - ipow(par.q, hex.T + hex.N - t - n - 1));
  if (rad < 0) throw config_error("transfer coefficient radicand negative: n too large for slice");
  return sqrt(rad);
}

BigComplex w_lozenge(const QKappa& par, long long S, const Rat& j) {
  BigReal p = par.kap * pow_rat(par.q, j - Rat(S + 1, 2));
  return {BigReal(0), p + 1 / p};
}

std::vector<BigReal> InterSliceOp::apply(const std::vector<BigReal>& f) const {
  if (f.size() != u0.size()) throw config_error("transfer input is not a slice-t function");
  std::vector<BigReal> out(f.size() + 1, BigReal(0));
  for (std::size_t x = 0; x < f.size(); ++x) {
    out[x] += u0[x] * f[x];
    out[x + 1] += u1[x] * f[x];
  }
  return out;
}

Kernel2D::Kernel2D(HexagonParams hex, QKappa par) : hex_(std::move(hex)), par_(std::move(par)) {
  hex_.validate();
  par_.validate();
  if (max_slice() < 0) throw config_error("hexagon has no slices in the first parameter zone");
}

long long Kernel2D::max_slice() const {
  return std::min(hex_.S, hex_.T - hex_.S) - 1;
}

void Kernel2D::require_slice(long long t) const {
  if (t < 0 || t > max_slice())
    throw config_error("slice outside the first parameter zone");
}

const SliceBasis& Kernel2D::basis(long long t) {
  require_slice(t);
  auto it = bases_.find(t);
  if (it == bases_.end()) it = bases_.try_emplace(t, hex_, par_, t).first;
  return it->second;
}

const GaugeSlice& Kernel2D::gauge(long long t) {
  require_slice(t);
  auto it = gauges_.find(t);
  if (it != gauges_.end()) return it->second;
  GaugeSlice g;
  g.lambda = lambda_value(hex_, par_, t);
  long long M = hex_.N + t - 1;
  g.wtilde.reserve(M + 1);
  for (long long x = 0; x <= M; ++x) {
    BigReal wt = wtilde_value(hex_, par_, t, x);
    if (!(wt > 0)) throw config_error("gauge weight lost positivity");
    g.wtilde.push_back(std::move(wt));
  }
  g.glog.reserve(M + 1);
  for (long long x = 0; x <= M; ++x)
    g.glog.push_back(glog_value(hex_, par_, t, x, g.wtilde[x]));
  return gauges_.emplace(t, std::move(g)).first->second;
}

InterSliceOp Kernel2D::transfer(long long t) {
  require_slice(t + 1);
  const GaugeSlice& gt = gauge(t);
  const GaugeSlice& gt1 = gauge(t + 1);
  InterSliceOp op;
  op.t = t;
  long long M = hex_.N + t - 1;
  op.u0.reserve(M + 1);
  op.u1.reserve(M + 1);
  for (long long x = 0; x <= M; ++x) {
    op.u0.push_back(sqrt(gt.wtilde[x] / gt1.wtilde[x]) * a0_coeff(hex_, par_, t, x));
    op.u1.push_back(sqrt(gt.wtilde[x] / gt1.wtilde[x + 1]) * a1_coeff(hex_, par_, t, x));
  }
  return op;
}

BigReal Kernel2D::kernel(long long s, long long x, long long t, long long y) {
  require_slice(s);
  require_slice(t);
  if (x < 0 || x > hex_.N + s - 1 || y < 0 || y > hex_.N + t - 1)
    throw config_error("lattice point off its slice");
  const SliceBasis& bs = basis(s);
  const SliceBasis& bt = basis(t);
  BigReal acc(0);
  if (s >= t) {
    for (long long n = 0; n < hex_.N; ++n) {
      BigReal cprod(1);
      for (long long j = t; j < s; ++j) cprod *= c_tilde(hex_, par_, n, j);
      acc += bs.f(n, x) * bt.f(n, y) / cprod;
    }
  } else {
    for (long long n = hex_.N; n < hex_.N + s; ++n) {
      BigReal cprod(1);
      for (long long j = s; j < t; ++j) cprod *= c_tilde(hex_, par_, n, j);
      acc -= cprod * bs.f(n, x) * bt.f(n, y);
    }
  }
  return acc;
}

BigComplex Kernel2D::kast_inv(long long s, long long x, long long t, long long y) {
  BigReal core = (s == t && x == y ? BigReal(1) : BigReal(0)) - kernel(s, x, t, y);
  BigReal gr = exp(gauge(s).glog[x] - gauge(t).glog[y]);
  BigReal p = par_.kap * pow_rat(par_.q, Rat(2 * x - s + 1 - hex_.S, 2));
  return BigComplex::i_pow(t - s - 1) * BigComplex(gr * core / (p + 1 / p));
}

BigReal Kernel2D::prelimit_barcode(long long s, long long t) {
  if (!hex_.L) throw config_error("pre-limit barcode kernel needs the canonical hexagon");
  long long L = *hex_.L;
  BigComplex v = BigComplex::i_pow(t - s) * kast_inv(2 * L + s, 3 * L, 2 * L + t - 1, 3 * L);
  v *= BigComplex(ipow(par_.q, 2 * L * (s - t)));
  if (!(abs(v.im) < tol(20) * (1 + abs(v.re))))
    throw config_error("pre-limit barcode kernel lost realness: phase bookkeeping bug");
  return v.re;
}

BigReal Kernel2D::square_lozenge_probability(const std::vector<long long>& ts) {
  if (ts.empty()) throw config_error("probability of an empty lozenge pattern");
  Matrix m(ts.size(), std::vector<BigReal>(ts.size()));
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); ++j) m[i][j] = prelimit_barcode(ts[i], ts[j]);
  return determinant(std::move(m));
}

BigReal determinant(Matrix a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw config_error("determinant needs a square matrix");
  BigReal det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (abs(a[r][k]) > abs(a[p][k])) p = r;
    if (a[p][k] == 0) return BigReal(0);
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t r = k + 1; r < n; ++r) {
      BigReal m = a[r][k] / a[k][k];
      for (std::size_t c = k; c < n; ++c) a[r][c] -= m * a[k][c];
    }
  }
  return det;
}

namespace {

void check_labels(const Matrix& m, const std::vector<std::string>& rows,
                  const std::vector<std::string>& cols) {
  if (rows.size() != m.size()) throw config_error("row label count mismatch");
  for (const auto& r : m)
    if (r.size() != cols.size()) throw config_error("column label count mismatch");
}

}  // namespace

void write_matrix_csv(std::ostream& os, const Matrix& m,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels) {
  check_labels(m, row_labels, col_labels);
  os << std::scientific << std::setprecision(29);
  for (const auto& c : col_labels) os << ',' << c;
  os << '\n';
  for (std::size_t r = 0; r < m.size(); ++r) {
    os << row_labels[r];
    for (const auto& v : m[r]) os << ',' << v;
    os << '\n';
  }
}

void write_matrix_json(std::ostream& os, const Matrix& m,
                       const std::vector<std::string>& row_labels,
                       const std::vector<std::string>& col_labels) {
  check_labels(m, row_labels, col_labels);
  os << std::scientific << std::setprecision(29);
  auto strings = [&os](const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ",\"" : "\"") << v[i] << '"';
  };
  os << "{\"rows\":[";
  strings(row_labels);
  os << "],\"cols\":[";
  strings(col_labels);
  os << "],\"values\":[";
  for (std::size_t r = 0; r < m.size(); ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < m[r].size(); ++c) os << (c ? "," : "") << m[r][c];
    os << ']';
  }
  os << "]}\n";
}

}  // namespace qracah
