#include "qracah/limits.hpp"

#include <deque>
#include <iomanip>
#include <ostream>

namespace qracah {

namespace {

// Set the global default precision to an absolute value for the current scope.
struct ScopedPrecision {
  unsigned saved;
  explicit ScopedPrecision(unsigned digits) : saved(precision()) { set_precision(digits); }
  ~ScopedPrecision() { set_precision(saved); }
};

constexpr long long kWindowGuard = 4000;

// Shared evaluation state for the F_n family: lifted parameters, the guarded
// theta value at |kappa| itself, and memoized theta denominators / Pochhammer
// factors. All arithmetic runs 100 digits above the entry precision; the
// alternating sums here and in the kernel partial sums cancel far less than
// that, so cached values stay accurate to well past the entry precision.
struct FnState {
  unsigned base = 0;  // precision at construction time
  unsigned work = 0;
  QKappa par;
  BigReal sqrt_q;
  BigReal theta_kap;       // theta_{sqrt q}(|kappa|)
  BigReal qq_inf;          // (q;q)_inf
  BigReal theta_inv_kap2;  // theta_q(kappa^{-2}), positive (negative argument)
  std::map<long long, BigReal> thetas;
  std::deque<BigReal> qq;

  explicit FnState(const QKappa& p) {
    p.validate();
    base = precision();
    work = base + 100;
    ScopedPrecision sp(work);
    par.q = lift(p.q);
    par.kap = lift(p.kap);
    sqrt_q = sqrt(par.q);
    theta_kap = theta(sqrt_q, par.kap);
    // |theta(z)| <= theta(-|z|) factor by factor, so the negative-argument
    // value is a sound magnitude reference for the vanishing test.
    BigReal companion = theta(sqrt_q, -par.kap);
    BigReal thr = pow(BigReal(10), 40 - static_cast<long long>(base));
    if (!(abs(theta_kap) > companion * thr))
      throw config_error(
          "singular parameters: |kappa| sits at an integer power of sqrt(q)");
    qq_inf = qpoch_infinite(par.q, par.q);
    theta_inv_kap2 = theta(par.q, -1 / (par.kap * par.kap));
    qq.push_back(BigReal(1));
  }

  // theta_{sqrt q}(|kappa| q^{two_u / 2}), memoized over two_u.
  const BigReal& theta_u(long long two_u) {
    auto it = thetas.find(two_u);
    if (it == thetas.end()) {
      ScopedPrecision sp(work);
      BigReal z = par.kap * pow_rat(par.q, Rat(two_u, 2));
      it = thetas.emplace(two_u, theta(sqrt_q, z)).first;
    }
    return it->second;
  }

  const BigReal& qpoch(long long k) {
    if (static_cast<long long>(qq.size()) <= k) {
      ScopedPrecision sp(work);
      while (static_cast<long long>(qq.size()) <= k) {
        long long j = qq.size();
        qq.push_back(qq.back() * (1 - pow(par.q, j)));
      }
    }
    return qq[k];
  }

  BigReal value(long long two_n, long long two_x) {
    if (two_n < 0) throw config_error("F_n needs n >= 0");
    ScopedPrecision sp(work);
    BigReal sum(0);
    for (long long two_i = -two_n; two_i <= two_n; two_i += 2) {
      BigReal term = pow_rat(par.q, Rat(-two_i, 4));
      term /= qpoch((two_n - two_i) / 2) * qpoch((two_n + two_i) / 2);
      term /= theta_u(two_x + two_i + 1);
      if (((two_n + two_i) / 2) % 2 != 0) term = -term;
      sum += term;
    }
    BigReal radicand = 1 + pow(par.q, -two_x) / (par.kap * par.kap);
    return sqrt(radicand) * sum;
  }

  BigReal norm_sq(long long two_n) {
    if (two_n < 0) throw config_error("F_n needs n >= 0");
    ScopedPrecision sp(work);
    return qq_inf * par.kap * par.kap * theta_inv_kap2 /
           (pow_rat(par.q, Rat(two_n, 2)) * qpoch(two_n) * theta_kap * theta_kap);
  }

  FnFunction build(long long two_n) {
    FnFunction f;
    f.two_n = two_n;
    f.norm_sq = norm_sq(two_n);
    ScopedPrecision sp(work);
    BigReal cutoff =
        pow(BigReal(10), -static_cast<long long>(base) - 10) * f.norm_sq;
    long long lo = -(two_n + 10), hi = two_n + 10;
    std::deque<BigReal> vals;
    for (long long tx = lo; tx <= hi; ++tx) vals.push_back(value(two_n, tx));
    while (vals.front() * vals.front() >= cutoff) {
      if (--lo < -kWindowGuard) throw size_guard_error("F_n window ran away (left)");
      vals.push_front(value(two_n, lo));
    }
    while (vals.back() * vals.back() >= cutoff) {
      if (++hi > kWindowGuard) throw size_guard_error("F_n window ran away (right)");
      vals.push_back(value(two_n, hi));
    }
    f.two_x_min = lo;
    f.values.assign(vals.begin(), vals.end());
    return f;
  }
};

}  // namespace

BigReal limit_coeff(const QKappa& par, LimitCase c, long long dx, CoeffKind which) {
  par.validate();
  const BigReal& q = par.q;
  const BigReal k2 = par.kap2();
  if (which == CoeffKind::Diag) {
    switch (c) {
      case LimitCase::BelowBand:
      case LimitCase::AboveBand:
      case LimitCase::OutsideWaterfallSlice:
        return BigReal(-1);
      case LimitCase::LowerBoundary:
        return -1 - (1 + q) * pow(q, -1 - 2 * dx) / k2;
      case LimitCase::LowerInterior:
        return -(1 + q) * pow(q, -1 - 2 * dx) / k2;
      case LimitCase::Center:
        return -k2 * (1 + q) * pow(q, 2 * dx + 1) /
               ((1 - k2 * pow(q, 2 * dx)) * (1 - k2 * pow(q, 2 * dx + 2)));
      case LimitCase::UpperInterior:
        return -k2 * (1 + q) * pow(q, 2 * dx + 1);
      case LimitCase::UpperBoundary:
        return -1 - k2 * (1 + q) * pow(q, 2 * dx + 1);
    }
  } else {
    switch (c) {
      case LimitCase::BelowBand:
      case LimitCase::AboveBand:
      case LimitCase::OutsideWaterfallSlice:
        return BigReal(0);
      case LimitCase::LowerBoundary:
      case LimitCase::LowerInterior:
        return -pow_rat(q, Rat(1 - 4 * dx, 2)) / k2;
      case LimitCase::Center:
        return -k2 * pow_rat(q, Rat(4 * dx + 1, 2)) /
               ((1 - k2 * pow(q, 2 * dx)) *
                sqrt((1 - k2 * pow(q, 2 * dx - 1)) * (1 - k2 * pow(q, 2 * dx + 1))));
      case LimitCase::UpperInterior:
      case LimitCase::UpperBoundary:
        return -k2 * pow_rat(q, Rat(4 * dx + 1, 2));
    }
  }
  throw config_error("limit_coeff: unknown case");
}

std::vector<BigReal> tctr_apply(const QKappa& par, const std::vector<BigReal>& g,
                                long long x_min) {
  par.validate();
  const long long n = static_cast<long long>(g.size());
  auto gat = [&](long long x) {
    long long i = x - x_min;
    return (i >= 0 && i < n) ? g[i] : BigReal(0);
  };
  std::vector<BigReal> out;
  out.reserve(n + 2);
  for (long long x = x_min - 1; x <= x_min + n; ++x) {
    BigReal r = limit_coeff(par, LimitCase::Center, x + 1, CoeffKind::OffDiag) * gat(x + 1);
    r += limit_coeff(par, LimitCase::Center, x, CoeffKind::Diag) * gat(x);
    r += limit_coeff(par, LimitCase::Center, x, CoeffKind::OffDiag) * gat(x - 1);
    out.push_back(r);
  }
  return out;
}

BigReal gctr(const QKappa& par, long long n, long long x) {
  par.validate();
  if (n < 0) throw config_error("gctr needs n >= 0");
  PrecisionBump guard(40);
  const BigReal q = lift(par.q), kap = lift(par.kap);
  const BigReal kap2abs = kap * kap;
  const BigReal qq_n = qpoch_finite(q, q, n);
  BigReal sum(0);
  for (long long i = 0; i <= n; ++i) {
    BigReal term = pow(kap, 2 * i) * pow(q, (2 * i - n) * x - i * (n - i - 1));
    term *= qq_n / (qpoch_finite(q, q, i) * qpoch_finite(q, q, n - i));
    if (i % 2 != 0) term = -term;
    sum += term;
  }
  BigReal out = pow(q, x * (x + 1)) * pow(kap, 2 * x) *
                sqrt(pow(q, -x) + kap2abs * pow(q, x + 1)) * sum;
  out.precision(guard.saved);
  return out;
}

BigReal afun(const QKappa& par, long long two_x) {
  par.validate();
  const BigReal& q = par.q;
  const BigReal k2 = par.kap2();
  return sqrt(-k2 * pow(q, two_x - 1) /
              ((1 - k2 * pow(q, two_x)) * (1 - k2 * pow(q, two_x - 1))));
}

std::vector<BigReal> u_barcode_apply(const QKappa& par, long long t,
                                     const std::vector<BigReal>& f, long long two_x_min) {
  par.validate();
  const long long n = static_cast<long long>(f.size());
  std::vector<BigReal> out;
  out.reserve(n + 1);
  for (long long j = 0; j <= n; ++j) {
    long long two_x = two_x_min + 2 * j;
    BigReal r(0);
    if (j >= 1) r += afun(par, two_x - t) * f[j - 1];
    if (j < n) r += afun(par, two_x - t + 1) * f[j];
    out.push_back(r);
  }
  return out;
}

BigReal F_theta(const QKappa& par, long long two_n, long long two_x) {
  FnState st(par);
  BigReal v = st.value(two_n, two_x);
  v.precision(st.base);
  return v;
}

BigReal F_norm_sq(const QKappa& par, long long two_n) {
  FnState st(par);
  BigReal v = st.norm_sq(two_n);
  v.precision(st.base);
  return v;
}

BigReal FnFunction::at(long long two_x) const {
  long long i = two_x - two_x_min;
  if (i < 0 || i >= static_cast<long long>(values.size())) return BigReal(0);
  return values[i];
}

FnFunction build_fn(const QKappa& par, long long two_n) {
  FnState st(par);
  return st.build(two_n);
}

BigReal identity_partial_sum(const QKappa& par, long long two_x, long long two_y,
                             long long two_n_max) {
  if (two_n_max < 0) throw config_error("identity_partial_sum needs n_max >= 0");
  FnState st(par);
  BigReal sum(0);
  for (long long two_n = 0; two_n <= two_n_max; ++two_n)
    sum += st.value(two_n, two_x) * st.value(two_n, two_y) / st.norm_sq(two_n);
  sum.precision(st.base);
  return sum;
}

void BarcodeKernelParams::validate() const {
  par.validate();
  if (M < 0) throw config_error("truncation order M must be >= 0");
}

struct BarcodeKernel::Ctx {
  FnState st;
  explicit Ctx(const QKappa& p) : st(p) {}
};

BarcodeKernel::BarcodeKernel(BarcodeKernelParams p) : p_(std::move(p)) {
  p_.validate();
  ctx_ = std::make_unique<Ctx>(p_.par);
}

BarcodeKernel::~BarcodeKernel() = default;

const FnFunction& BarcodeKernel::fn(long long two_n) {
  auto it = fns_.find(two_n);
  if (it == fns_.end()) it = fns_.emplace(two_n, ctx_->st.build(two_n)).first;
  return it->second;
}

// Regularized partial sum for s >= t. Collapsing the sign bookkeeping of the
// t-1-s power of -q^n against the outer alternating factors leaves an overall
// minus sign on a positive square root times a plain q-power series, with the
// regularizer folded into each term's exponent to keep magnitudes tame.
BigReal BarcodeKernel::half_eval(long long s, long long t, bool alternate) {
  FnState& st = ctx_->st;
  ScopedPrecision sp(st.work);
  const BigReal& q = st.par.q;
  const BigReal kap2abs = st.par.kap * st.par.kap;
  BigReal root = sqrt(kap2abs / ((1 + kap2abs * pow(q, 2 - t)) *
                                 (1 + kap2abs * pow(q, 1 - s))));
  const long long two_n_hi = alternate ? 2 * p_.M : 2 * p_.M + 1;
  const long long reg = alternate ? (2 * p_.M + 1) * (s - t) : 2 * (p_.M + 1) * (s - t);
  BigReal sum(0);
  for (long long two_n = 0; two_n <= two_n_hi; ++two_n) {
    const FnFunction& f = fn(two_n);
    BigReal term = f.at(2 - t) * f.at(1 - s) / f.norm_sq;
    term *= pow_rat(q, Rat(reg + two_n * (t - 1 - s) + (1 - s), 2));
    sum += term;
  }
  BigReal out = -root * sum;
  out.precision(st.base);
  return out;
}

BigReal BarcodeKernel::eval(long long s, long long t) {
  return s >= t ? half_eval(s, t, false) : half_eval(t, s, false);
}

BigReal BarcodeKernel::eval_alternate(long long s, long long t) {
  return s >= t ? half_eval(s, t, true) : half_eval(t, s, true);
}

BigReal k_limit(const BarcodeKernelParams& p, long long s, long long t) {
  BarcodeKernel k(p);
  return k.eval(s, t);
}

BigReal k_limit_alternate(const BarcodeKernelParams& p, long long s, long long t) {
  BarcodeKernel k(p);
  return k.eval_alternate(s, t);
}

BigReal k_limit_increment(const BarcodeKernelParams& p, long long s, long long t) {
  if (p.M < 1) throw config_error("increment proxy needs M >= 1");
  BarcodeKernelParams prev = p;
  prev.M = p.M - 1;
  return abs(k_limit(p, s, t) - k_limit(prev, s, t));
}

std::pair<BigReal, BigReal> rho_even_odd(const BarcodeKernelParams& p) {
  BarcodeKernel k(p);
  return {k.eval(0, 0), k.eval(1, 1)};
}

BigReal two_point(const BarcodeKernelParams& p, long long t) {
  if (t < 1) throw config_error("two_point needs t >= 1");
  BigReal v = k_limit(p, 0, t);
  return -v * v;
}

BigReal decay_exponent(const BarcodeKernelParams& p, long long t) {
  if (t < 1) throw config_error("decay_exponent needs t >= 1");
  BigReal v = k_limit(p, 0, t);
  return log(abs(v)) / log(p.par.q);
}

void write_decay_csv(std::ostream& os, const BarcodeKernelParams& p, long long t_max) {
  if (t_max < 1) throw config_error("decay table needs t_max >= 1");
  BarcodeKernel k(p);
  os << "t,log_ratio\n";
  for (long long t = 1; t <= t_max; ++t) {
    BigReal v = k.eval(0, t);
    os << t << ',' << std::scientific << std::setprecision(29)
       << BigReal(log(abs(v)) / log(p.par.q)) << '\n';
  }
}

void write_density_surface_csv(std::ostream& os, const BigReal& q_lo,
                               const BigReal& q_hi, const BigReal& kap_lo,
                               const BigReal& kap_hi, const BigReal& step,
                               long long M) {
  if (!(q_lo > 0) || !(q_hi < 1) || !(q_lo <= q_hi))
    throw config_error("density surface needs 0 < q_lo <= q_hi < 1");
  if (!(kap_lo > 0) || !(kap_lo <= kap_hi))
    throw config_error("density surface needs 0 < kap_lo <= kap_hi");
  if (!(step > 0)) throw config_error("density surface needs step > 0");
  if (M < 0) throw config_error("truncation order M must be >= 0");
  const long long nq =
      1 + static_cast<long long>(((q_hi - q_lo) / step + BigReal(1) / 2).convert_to<double>());
  const long long nk =
      1 + static_cast<long long>(((kap_hi - kap_lo) / step + BigReal(1) / 2).convert_to<double>());
  if (nq * nk > 100'000) throw size_guard_error("density surface grid too large");
  os << "q,kappa_abs,rho_even\n";
  for (long long i = 0; i < nq; ++i) {
    BigReal qv = q_lo + i * step;
    for (long long j = 0; j < nk; ++j) {
      BigReal kv = kap_lo + j * step;
      os << std::defaultfloat << std::setprecision(17) << qv << ',' << kv << ',';
      try {
        BarcodeKernel k({QKappa{qv, kv}, M});
        os << std::scientific << std::setprecision(29) << k.eval(0, 0);
      } catch (const config_error&) {
        os << "nan";
      }
      os << '\n';
    }
  }
}

}  // namespace qracah
