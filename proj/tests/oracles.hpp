#pragma once

// Shared helpers for the test binaries only. Everything in here is an
// independent route: no production code beyond the numeric types is reused.

#include <algorithm>
#include <array>
#include <functional>
#include <vector>

#include "qracah/bigreal.hpp"
#include "qracah/rng.hpp"

namespace testutil {

using qracah::BigComplex;
using qracah::BigReal;

// Temporarily switch the global precision (e.g. for doubled-precision oracles).
struct PrecisionGuard {
  unsigned saved;
  explicit PrecisionGuard(unsigned digits) : saved(qracah::precision()) {
    qracah::set_precision(digits);
  }
  ~PrecisionGuard() { qracah::set_precision(saved); }
};

inline BigReal random_real(qracah::Rng& rng, double lo, double hi) {
  return BigReal(lo + (hi - lo) * rng.uniform01());
}

// Dense symmetric eigensolver (cyclic Jacobi). Oracle-grade: O(n^3) per sweep,
// used on small matrices at modest precision. Returns eigenvalues ascending;
// if vecs != nullptr it receives the matching orthonormal columns.
inline std::vector<BigReal> jacobi_eigs(std::vector<std::vector<BigReal>> a,
                                        std::vector<std::vector<BigReal>>* vecs = nullptr) {
  const std::size_t n = a.size();
  std::vector<std::vector<BigReal>> v(n, std::vector<BigReal>(n, BigReal(0)));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;
  const BigReal eps = qracah::tol(10);
  for (int sweep = 0; sweep < 200; ++sweep) {
    BigReal off(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < eps * eps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q2 = p + 1; q2 < n; ++q2) {
        if (a[p][q2] == 0) continue;
        BigReal theta = (a[q2][q2] - a[p][p]) / (2 * a[p][q2]);
        BigReal t = 1 / (abs(theta) + sqrt(theta * theta + 1));
        if (theta < 0) t = -t;
        BigReal c = 1 / sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          BigReal akp = a[k][p], akq = a[k][q2];
          a[k][p] = c * akp - s * akq;
          a[k][q2] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          BigReal apk = a[p][k], aqk = a[q2][k];
          a[p][k] = c * apk - s * aqk;
          a[q2][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          BigReal vkp = v[k][p], vkq = v[k][q2];
          v[k][p] = c * vkp - s * vkq;
          v[k][q2] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a[order[j]][order[j]] < a[order[i]][order[i]]) std::swap(order[i], order[j]);
  std::vector<BigReal> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = a[order[i]][order[i]];
  if (vecs) {
    vecs->assign(n, std::vector<BigReal>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) (*vecs)[i][j] = v[i][order[j]];
  }
  return eigs;
}

// Exhaustive enumeration of the N nonintersecting up-right particle paths on
// the a x b x c hexagon (T = b+c, S = c, N = a), with the product weight
// prod_{t,i} q^{x_i(t)} / (1 + |kappa|^2 q^{2 x_i(t) - S - t + 1}). Only
// feasible for tiny boxes; used as the ground-truth measure.
struct PathEnsemble {
  std::vector<std::vector<std::vector<long long>>> configs;  // [c][t][i]
  std::vector<BigReal> weights;
  BigReal total{0};

  // P{site x occupied on slice t}.
  BigReal site_probability(long long t, long long x) const {
    BigReal num(0);
    for (std::size_t c = 0; c < configs.size(); ++c)
      for (long long xi : configs[c][t])
        if (xi == x) num += weights[c];
    return num / total;
  }
};

inline PathEnsemble enumerate_paths(long long T, long long S, long long N,
                                    const BigReal& q, const BigReal& kap) {
  const BigReal k2abs = kap * kap;
  auto lo = [&](long long t) { return std::max<long long>(0, t - (T - S)); };
  auto hi = [&](long long t) { return std::min(t, S) + N - 1; };

  PathEnsemble ens;
  std::vector<std::vector<long long>> cur(T + 1, std::vector<long long>(N));
  for (long long i = 0; i < N; ++i) cur[0][i] = i;

  auto slice_weight = [&](long long s) {
    BigReal w(1);
    for (long long i = 0; i < N; ++i) {
      long long x = cur[s][i];
      w *= qracah::ipow(q, x) / (1 + k2abs * qracah::ipow(q, 2 * x - S - s + 1));
    }
    return w;
  };

  std::function<void(long long, const BigReal&)> walk = [&](long long t, const BigReal& w) {
    if (t == T) {
      ens.configs.push_back(cur);
      ens.weights.push_back(w);
      ens.total += w;
      return;
    }
    for (unsigned mask = 0; mask < (1u << N); ++mask) {
      bool ok = true;
      for (long long i = 0; i < N && ok; ++i) {
        cur[t + 1][i] = cur[t][i] + ((mask >> i) & 1u);
        if (cur[t + 1][i] < lo(t + 1) || cur[t + 1][i] > hi(t + 1)) ok = false;
        if (i > 0 && cur[t + 1][i] <= cur[t + 1][i - 1]) ok = false;
      }
      if (ok) walk(t + 1, w * slice_weight(t + 1));
    }
  };
  walk(0, slice_weight(0));
  return ens;
}

// True when the tiling behind config cfg contains the lozenge with white
// triangle (t,y) and black triangle (s,x): s=t, x=y is the horizontal type
// (a hole at (t,y)); s=t+1 pairs a path step y -> x with x in {y, y+1}.
inline bool has_lozenge(const std::vector<std::vector<long long>>& cfg, long long t,
                        long long y, long long s, long long x) {
  if (s == t && x == y) {
    for (long long xi : cfg[t])
      if (xi == y) return false;
    return true;
  }
  for (std::size_t i = 0; i < cfg[t].size(); ++i)
    if (cfg[t][i] == y && cfg[s][i] == x) return true;
  return false;
}

// P{all lozenges [(t,y);(s,x)] in the pattern are present}, each entry
// packed as {s, x, t, y} (black first, matching the kernel argument order).
inline BigReal pattern_probability(const PathEnsemble& ens,
                                   const std::vector<std::array<long long, 4>>& pat) {
  BigReal num(0);
  for (std::size_t c = 0; c < ens.configs.size(); ++c) {
    bool all = true;
    for (const auto& l : pat)
      if (!has_lozenge(ens.configs[c], l[2], l[3], l[0], l[1])) {
        all = false;
        break;
      }
    if (all) num += ens.weights[c];
  }
  return num / ens.total;
}

// P{site x_j occupied on slice t_j for every j}.
inline BigReal joint_site_probability(const PathEnsemble& ens,
                                      const std::vector<std::array<long long, 2>>& pts) {
  BigReal num(0);
  for (std::size_t c = 0; c < ens.configs.size(); ++c) {
    bool all = true;
    for (const auto& p : pts) {
      bool found = false;
      for (long long xi : ens.configs[c][p[0]])
        if (xi == p[1]) found = true;
      if (!found) {
        all = false;
        break;
      }
    }
    if (all) num += ens.weights[c];
  }
  return num / ens.total;
}

// Complex determinant by Gaussian elimination, independent of the library's
// real-matrix routine.
inline BigComplex complex_det(std::vector<std::vector<BigComplex>> a) {
  std::size_t n = a.size();
  BigComplex det{BigReal(1), BigReal(0)};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (abs(a[r][k]) > abs(a[p][k])) p = r;
    if (abs(a[p][k]) == 0) return {BigReal(0), BigReal(0)};
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t r = k + 1; r < n; ++r) {
      BigComplex m = a[r][k] / a[k][k];
      for (std::size_t c = k; c < n; ++c) a[r][c] -= m * a[k][c];
    }
  }
  return det;
}

}  // namespace testutil
