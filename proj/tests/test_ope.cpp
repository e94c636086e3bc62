#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "qracah/ope.hpp"

using namespace qracah;

namespace {

// built lazily so the values pick up the precision set in main()
const QKappa& kHalf() {
  static const QKappa p{BigReal(1) / 2, BigReal(2)};
  return p;
}

BigReal dot(const std::vector<BigReal>& a, const std::vector<BigReal>& b) {
  BigReal s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix dense(const TridiagonalOperator& op) {
  const std::size_t n = op.size();
  Matrix a(n, std::vector<BigReal>(n, BigReal(0)));
  for (std::size_t x = 0; x < n; ++x) {
    a[x][x] = op.diag[x];
    if (x + 1 < n) a[x][x + 1] = a[x + 1][x] = op.off[x];
  }
  return a;
}

std::vector<BigReal> basis_column(const SliceBasis& b, long long n) {
  std::vector<BigReal> v(b.M() + 1);
  for (long long x = 0; x <= b.M(); ++x) v[x] = b.f(n, x);
  return v;
}

}  // namespace

TEST_CASE("slice weight") {
  HexagonParams h{8, 4, 4};
  ZoneParams z = zone_of(h, 1);
  CHECK(z.zone == 1);
  CHECK(weight_wqr(z, kHalf(), 0) == 1);
  for (long long x = 0; x <= z.M; ++x) CHECK(weight_wqr(z, kHalf(), x) > 0);

  // ratio against the single closed form valid across all zones
  const BigReal q = kHalf().q, k2 = kHalf().kap2();
  auto Q = [&](long long e) { return pow(q, e); };
  const long long T = 8, S = 4, N = 4, t = 1;
  for (long long x = 0; x < z.M; ++x) {
    BigReal lhs = weight_wqr(z, kHalf(), x) / weight_wqr(z, kHalf(), x + 1);
    BigReal num = q * (1 - Q(x + 1)) * (Q(S) - k2 * Q(N + x + 1)) *
                  (Q(t) - k2 * Q(N + x + 1)) * (Q(S + t) - k2 * Q(2 * x + 1)) *
                  (Q(S + t) - Q(T + x + 1));
    BigReal den = (Q(T) - k2 * Q(x + 1)) * (Q(N + S) - Q(x + 1)) *
                  (Q(N + t) - Q(x + 1)) * (Q(S + t) - k2 * Q(x + 1)) *
                  (Q(S + t) - k2 * Q(2 * x + 3));
    CHECK(abs(lhs - num / den) < tol(30) * (1 + abs(lhs)));
  }
  CHECK_THROWS_AS(weight_wqr(z, kHalf(), -1), config_error);
  CHECK_THROWS_AS(weight_wqr(z, kHalf(), z.M + 1), config_error);
}

TEST_CASE("spectral variable") {
  HexagonParams h{8, 4, 4};
  const long long t = 1;
  ZoneParams z = zone_of(h, t);
  CHECK(mu(z, kHalf(), 0) == 1 + (z.gamma * z.delta * QPower::q_pow(1)).value(kHalf()));
  for (long long x = 0; x < z.M; ++x) CHECK(mu(z, kHalf(), x) < mu(z, kHalf(), x + 1));
  const BigReal k2 = kHalf().kap2();
  for (long long x = 0; x <= z.M; ++x) {
    BigReal direct = pow(kHalf().q, -x) + k2 * pow(kHalf().q, x + 1 - h.S - t);
    CHECK(abs(mu(z, kHalf(), x) - direct) < tol(30) * (1 + abs(direct)));
  }
}

TEST_CASE("polynomial normalization and orthogonality") {
  HexagonParams h{8, 4, 4};
  ZoneParams z = zone_of(h, 2);
  const long long M = z.M;
  for (long long x = 0; x <= M; ++x) CHECK(racah_R(z, kHalf(), 0, x) == 1);
  for (long long n = 0; n <= M; ++n) CHECK(racah_R(z, kHalf(), n, 0) == 1);

  std::vector<BigReal> w(M + 1), hn(M + 1);
  for (long long x = 0; x <= M; ++x) w[x] = weight_wqr(z, kHalf(), x);
  for (long long n = 0; n <= M; ++n) {
    hn[n] = hnorm(z, kHalf(), n);
    CHECK(hn[n] > 0);
  }
  for (long long m = 0; m <= M; ++m)
    for (long long n = m; n <= M; ++n) {
      BigReal s(0);
      for (long long x = 0; x <= M; ++x)
        s += w[x] * racah_R(z, kHalf(), m, x) * racah_R(z, kHalf(), n, x);
      BigReal want = m == n ? hn[n] : BigReal(0);
      CHECK(abs(s - want) < tol(20) * sqrt(hn[m] * hn[n]));
    }

  BigReal sw(0);
  for (long long x = 0; x <= M; ++x) sw += w[x];
  CHECK(abs(hn[0] - sw) < tol(20) * sw);
  CHECK_THROWS_AS(racah_R(z, kHalf(), M + 1, 0), config_error);
  CHECK_THROWS_AS(hnorm(z, kHalf(), -1), config_error);
}

TEST_CASE("orthonormal basis") {
  struct Probe {
    HexagonParams h;
    long long t;
  };
  // zone-1 and zone-4 slices of small canonical boxes plus a wide M = 39 slice
  std::vector<Probe> probes = {
      {HexagonParams::canonical(2), 5},
      {HexagonParams::canonical(2), 12},
      {HexagonParams::canonical(5), 20},
  };
  for (const auto& pr : probes) {
    SliceBasis b(pr.h, kHalf(), pr.t);
    const long long M = b.M();
    std::vector<std::vector<BigReal>> cols;
    for (long long n = 0; n <= M; ++n) cols.push_back(basis_column(b, n));
    for (long long m = 0; m <= M; ++m)
      for (long long n = m; n <= M; ++n)
        CHECK(abs(dot(cols[m], cols[n]) - (m == n ? 1 : 0)) < tol(15));
  }
}

TEST_CASE("difference operator eigenstructure") {
  HexagonParams h = HexagonParams::canonical(2);
  for (long long t : {5, 12}) {
    SliceBasis b(h, kHalf(), t);
    const long long M = b.M();

    CHECK(eigenvalue_ev(b.zone, kHalf(), 0) == 0);
    for (long long n = 0; n < M; ++n)
      CHECK(eigenvalue_ev(b.zone, kHalf(), n + 1) < eigenvalue_ev(b.zone, kHalf(), n));

    TridiagonalOperator op = build_difference_operator(b);
    // same off-diagonal via the lowering coefficient
    for (long long x = 0; x < M; ++x) {
      BigReal alt = sqrt(b.w(x + 1) / b.w(x)) * coeff_D(b.zone, kHalf(), x + 1);
      CHECK(abs(op.off[x] - alt) < tol(20) * (1 + abs(op.off[x])));
    }
    CHECK(coeff_D(b.zone, kHalf(), 0) == 0);
    CHECK(coeff_B(b.zone, kHalf(), M) == 0);

    for (long long n = 0; n <= M; ++n) {
      std::vector<BigReal> v = basis_column(b, n);
      std::vector<BigReal> Dv = op.apply(v);
      BigReal ev = eigenvalue_ev(b.zone, kHalf(), n);
      for (long long x = 0; x <= M; ++x) CHECK(abs(Dv[x] - ev * v[x]) < tol(15));
    }

    std::vector<BigReal> eigs = testutil::jacobi_eigs(dense(op));
    for (long long i = 0; i <= M; ++i) {
      BigReal ev = eigenvalue_ev(b.zone, kHalf(), M - i);
      CHECK(abs(eigs[i] - ev) < tol(40) * (1 + abs(ev)));
    }
  }
}

TEST_CASE("scaled operator spectrum and projection") {
  const BigReal sx = BigReal(1) / 5;  // off the saturation band
  for (long long L : {2, 3}) {
    HexagonParams h = HexagonParams::canonical(L);
    SliceBasis b(h, kHalf(), 2 * L + 1);
    TridiagonalOperator op = build_scaled_operator(b, sx);

    std::vector<std::vector<BigReal>> vecs;
    std::vector<BigReal> eigs = testutil::jacobi_eigs(dense(op), &vecs);
    const long long M = b.M(), zi = M + 1 - h.N;

    const BigReal q = kHalf().q;
    CHECK(abs(eigs[zi]) < tol(40));
    CHECK(abs(eigs[zi - 1] + (1 - q) * (1 - pow(q, h.T))) < tol(40));
    CHECK(abs(eigs[zi + 1] - (1 - q) * (1 - pow(q, h.T + 2)) / q) < tol(40));
    // distance to the size-independent limits shrinks like q^T
    CHECK(abs(eigs[zi - 1] + (1 - q)) < 2 * pow(q, h.T));
    CHECK(abs(eigs[zi + 1] - (1 - q) / q) < 2 * pow(q, h.T));

    // projection onto the nonnegative part of the spectrum
    Matrix K = slice_kernel(b);
    for (long long x = 0; x <= M; ++x)
      for (long long y = 0; y <= M; ++y) {
        BigReal p(0);
        for (long long j = zi; j <= M; ++j) p += vecs[x][j] * vecs[y][j];
        CHECK(abs(p - K[x][y]) < tol(30));
      }
  }
  HexagonParams noL{8, 4, 4};
  SliceBasis nb(noL, kHalf(), 1);
  CHECK_THROWS_AS(build_scaled_operator(nb, BigReal(1)), config_error);
}

TEST_CASE("fixed-slice kernel") {
  HexagonParams h = HexagonParams::canonical(2);
  SliceBasis b(h, kHalf(), 5);
  Matrix K = slice_kernel(b);
  const long long M = b.M();
  BigReal tr(0);
  for (long long x = 0; x <= M; ++x) tr += K[x][x];
  CHECK(abs(tr - h.N) < tol(20));
  for (long long x = 0; x <= M; ++x)
    for (long long y = 0; y <= M; ++y) {
      BigReal s(0);
      for (long long z = 0; z <= M; ++z) s += K[x][z] * K[z][y];
      CHECK(abs(s - K[x][y]) < tol(10));
    }
}

TEST_CASE("kernel densities match exhaustive enumeration") {
  CHECK(testutil::enumerate_paths(2, 1, 1, kHalf().q, kHalf().kap).configs.size() == 2);
  for (const QKappa& p : {kHalf(), QKappa{BigReal(2) / 3, BigReal(3) / 2}}) {
    const long long T = 4, S = 2, N = 2;
    testutil::PathEnsemble ens = testutil::enumerate_paths(T, S, N, p.q, p.kap);
    CHECK(ens.configs.size() == 20);
    HexagonParams h{T, S, N};
    for (long long t = 1; t < T; ++t) {
      SliceBasis b(h, p, t);
      Matrix K = slice_kernel(b);
      SliceRange r = slice_range(h, t);
      for (long long x = r.lo; x <= r.hi; ++x) {
        long long i = tilde_x(h, t, x);
        CHECK(abs(K[i][i] - ens.site_probability(t, x)) < tol(30));
      }
    }
  }
}

TEST_CASE("difference coefficients agree across zone formulas on border slices") {
  HexagonParams h{10, 4, 3};
  ZoneParams za = zone_formula(h, 4, 1), zb = zone_formula(h, 4, 2);
  HexagonParams g{6, 4, 2};
  ZoneParams zc = zone_formula(g, 4, 3), zd = zone_formula(g, 4, 4);
  for (long long x = 0; x <= za.M; ++x) {
    CHECK(coeff_B(za, kHalf(), x) == coeff_B(zb, kHalf(), x));
    CHECK(coeff_D(za, kHalf(), x) == coeff_D(zb, kHalf(), x));
  }
  for (long long x = 0; x <= zc.M; ++x) {
    CHECK(coeff_B(zc, kHalf(), x) == coeff_B(zd, kHalf(), x));
    CHECK(coeff_D(zc, kHalf(), x) == coeff_D(zd, kHalf(), x));
  }
}

TEST_CASE("transfer truncation index") {
  HexagonParams h = HexagonParams::canonical(2);
  SliceBasis b(h, kHalf(), 3);
  CHECK(b.M() == h.N + 3 - 1);
  for (long long x = 0; x <= b.M(); ++x) CHECK(b.f(b.M() + 1, x) == 0);
  CHECK_THROWS_AS(b.f(b.M() + 2, 0), config_error);
  CHECK_THROWS_AS(b.f(0, -1), config_error);
}
