#pragma once

#include <optional>

#include "qracah/qpower.hpp"

namespace qracah {

// Hexagon with side data (a, b, c) stored as T = b+c, S = c, N = a.
// The canonical barcode family is T = 8L, S = N = 4L.
struct HexagonParams {
  long long T = 0, S = 0, N = 0;
  std::optional<long long> L;

  static HexagonParams canonical(long long L) {
    if (L <= 0) throw config_error("canonical hexagon needs L > 0");
    return {8 * L, 4 * L, 4 * L, L};
  }

  void validate() const {
    if (!(T > S && S > 0 && N > 0)) throw config_error("hexagon needs T > S > 0, N > 0");
    if (L && (*L <= 0 || T != 8 * *L || S != 4 * *L || N != 4 * *L))
      throw config_error("scale L set but hexagon is not the canonical T=8L, S=N=4L family");
  }
};

struct SliceRange {
  long long lo = 0, hi = 0;
  long long count() const { return hi - lo + 1; }
  bool contains(long long x) const { return lo <= x && x <= hi; }
};

// Vertical-slice parameters of the per-slice orthogonal ensemble. One of four
// parameter zones applies depending on t; on border slices adjacent zones
// produce identical values. tilde_x = x + shift maps slice coordinates to the
// ensemble's native ones.
struct ZoneParams {
  int zone = 0;  // 1..4
  long long M = 0;
  QPower alpha, beta, gamma, delta;
  long long shift = 0;

  bool operator==(const ZoneParams& o) const {
    return M == o.M && shift == o.shift && alpha == o.alpha && beta == o.beta &&
           gamma == o.gamma && delta == o.delta;
  }
};

SliceRange slice_range(const HexagonParams& hex, long long t);

// The zone's parameter formulas applied verbatim at slice t (no range check on
// t beyond 0..T); used for border-agreement checks.
ZoneParams zone_formula(const HexagonParams& hex, long long t, int zone);

ZoneParams zone_of(const HexagonParams& hex, long long t);

long long tilde_x(const HexagonParams& hex, long long t, long long x);

// Scaled (continuum) geometry; arbitrary positive reals allowed.
struct ScaledGeometry {
  BigReal T, S, N;

  ScaledGeometry(BigReal T_, BigReal S_, BigReal N_)
      : T(std::move(T_)), S(std::move(S_)), N(std::move(N_)) {
    if (!(T > 0) || !(S > 0) || !(N > 0))
      throw config_error("scaled geometry needs positive T, S, N");
  }

  BigReal t_l() const { return abs(N - S); }
  BigReal t_r() const {
    BigReal a = N + S, b = 2 * T - N - S;
    return a < b ? a : b;
  }
  bool waterfall_nonempty() const { return N < T && t_l() < t_r(); }
};

enum class Region {
  OutsideHex,
  Waterfall,
  CenterLine,
  AboveWaterfall,
  BelowWaterfall,
  BandOutsideWaterfall,
};

const char* region_name(Region r);

// Total classifier. Points on the closure of the waterfall band are tagged
// Waterfall (its interior center line is carved out as CenterLine); the
// above/below regions follow their defining inequalities even outside the
// hexagon; everything else inside the open hexagon is the saturation band.
Region classify_region(const ScaledGeometry& g, const BigReal& t, const BigReal& x);

}  // namespace qracah
