#include "qracah/hexagon.hpp"

#include <algorithm>

namespace qracah {

SliceRange slice_range(const HexagonParams& hex, long long t) {
  hex.validate();
  if (t < 0 || t > hex.T) throw config_error("slice index t out of [0, T]");
  return {std::max<long long>(0, t + hex.S - hex.T),
          std::min(t + hex.N - 1, hex.S + hex.N - 1)};
}

ZoneParams zone_formula(const HexagonParams& hex, long long t, int zone) {
  hex.validate();
  if (t < 0 || t > hex.T) throw config_error("slice index t out of [0, T]");
  const long long T = hex.T, S = hex.S, N = hex.N;
  ZoneParams z;
  z.zone = zone;
  switch (zone) {
    case 1:
      z.M = t + N - 1;
      z.alpha = QPower::q_pow(-S - N);
      z.beta = QPower::q_pow(S - T - N);
      z.gamma = QPower::q_pow(-t - N);
      z.delta = QPower::kappa2_q_pow(-S + N);
      z.shift = 0;
      break;
    case 2:
      z.M = S + N - 1;
      z.alpha = QPower::q_pow(-t - N);
      z.beta = QPower::q_pow(t - T - N);
      z.gamma = QPower::q_pow(-S - N);
      z.delta = QPower::kappa2_q_pow(-t + N);
      z.shift = 0;
      break;
    case 3:
      z.M = T - S + N - 1;
      z.alpha = QPower::q_pow(-T - N + t);
      z.beta = QPower::q_pow(-t - N);
      z.gamma = QPower::q_pow(-T - N + S);
      z.delta = QPower::kappa2_q_pow(-T + t + N);
      z.shift = T - t - S;
      break;
    case 4:
      z.M = T - t + N - 1;
      z.alpha = QPower::q_pow(-T - N + S);
      z.beta = QPower::q_pow(-S - N);
      z.gamma = QPower::q_pow(-T - N + t);
      z.delta = QPower::kappa2_q_pow(-T + S + N);
      z.shift = T - t - S;
      break;
    default:
      throw config_error("zone index must be 1..4");
  }
  return z;
}

ZoneParams zone_of(const HexagonParams& hex, long long t) {
  hex.validate();
  if (t < 0 || t > hex.T) throw config_error("slice index t out of [0, T]");
  const long long T = hex.T, S = hex.S;
  if (t <= std::min(S - 1, T - S - 1)) return zone_formula(hex, t, 1);
  if (S <= t && t <= T - S - 1) return zone_formula(hex, t, 2);
  if (T - S <= t && t <= S - 1) return zone_formula(hex, t, 3);
  return zone_formula(hex, t, 4);
}

long long tilde_x(const HexagonParams& hex, long long t, long long x) {
  if (!slice_range(hex, t).contains(x)) throw config_error("x outside slice range");
  return x + zone_of(hex, t).shift;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::OutsideHex: return "outside";
    case Region::Waterfall: return "waterfall";
    case Region::CenterLine: return "center";
    case Region::AboveWaterfall: return "above";
    case Region::BelowWaterfall: return "below";
    case Region::BandOutsideWaterfall: return "band";
  }
  return "?";
}

Region classify_region(const ScaledGeometry& g, const BigReal& t, const BigReal& x) {
  const BigReal tl = g.t_l(), tr = g.t_r();
  const bool has_waterfall = g.waterfall_nonempty();

  if (has_waterfall && tl <= t && t <= tr && abs(2 * x - g.S - t) <= g.N) {
    if (tl < t && t < tr && 2 * x == g.S + t) return Region::CenterLine;
    return Region::Waterfall;
  }

  if (g.N < g.T) {
    bool above = (tl < t && t < tr && 2 * x > g.S + t + g.N) ||
                 (t <= tl && g.N > g.S && x > g.N) ||
                 (t >= tr && g.S + g.N > g.T && x > g.S + g.N + t - g.T);
    if (above) return Region::AboveWaterfall;
    bool below = (tl < t && t < tr && 2 * x < g.S + t - g.N) ||
                 (t <= tl && g.N < g.S && x < t) ||
                 (t >= tr && g.S + g.N < g.T && x < g.S);
    if (below) return Region::BelowWaterfall;
  } else {
    BigReal pos = t - g.T + g.S;
    if (pos < 0) pos = 0;
    if (x > g.N + pos) return Region::AboveWaterfall;
    if (x < g.S + t - g.N - pos) return Region::BelowWaterfall;
  }

  BigReal lo = t - g.T + g.S;
  if (lo < 0) lo = 0;
  BigReal hi = g.S + g.N < t + g.N ? g.S + g.N : t + g.N;
  if (0 < t && t < g.T && lo < x && x < hi) return Region::BandOutsideWaterfall;
  return Region::OutsideHex;
}

}  // namespace qracah
