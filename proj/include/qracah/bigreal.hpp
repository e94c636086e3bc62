#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <stdexcept>
#include <string>
#include <utility>

namespace qracah {

namespace mp = boost::multiprecision;

// Arbitrary-precision real. Precision is a process-global knob (decimal digits)
// set once at startup; every value created afterwards carries that precision.
using BigReal = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

// Invalid parameters / domain violations. The CLI maps this to exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Request exceeds a hard size guard. The CLI maps this to exit code 3.
struct size_guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void set_precision(unsigned digits10) { BigReal::default_precision(digits10); }
inline unsigned precision() { return BigReal::default_precision(); }

// RAII guard digits for internal steps whose rounding error would otherwise
// surface at the caller's precision (cancellation, tiny divisors). Arithmetic
// results inherit the widest operand precision, so inputs must be passed
// through lift() for the extra digits to take effect.
struct PrecisionBump {
  unsigned saved;
  explicit PrecisionBump(unsigned extra) : saved(precision()) {
    set_precision(saved + extra);
  }
  ~PrecisionBump() { set_precision(saved); }
};

inline BigReal lift(BigReal x) {
  x.precision(precision());
  return x;
}

// 10^(-precision + slack), the working tolerance most checks compare against.
inline BigReal tol(long slack = 0) {
  return pow(BigReal(10), slack - static_cast<long>(precision()));
}

// Accepts "p/q" rationals and plain decimal strings.
inline BigReal parse_real(const std::string& s) {
  if (s.empty()) throw config_error("empty numeric literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigReal num(s.substr(0, slash));
    BigReal den(s.substr(slash + 1));
    if (den == 0) throw config_error("zero denominator in rational literal: " + s);
    return num / den;
  }
  return BigReal(s);
}

// Integer power that is safe for negative bases (mpfr pow would NaN on them).
inline BigReal ipow(const BigReal& b, long long e) {
  BigReal m = pow(abs(b), e);
  if (b < 0 && (e % 2 != 0)) m = -m;
  return m;
}

struct BigComplex {
  BigReal re{0}, im{0};

  BigComplex() = default;
  BigComplex(BigReal r) : re(std::move(r)) {}
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(int r) : re(r) {}

  static BigComplex i_pow(long long m) {
    switch (((m % 4) + 4) % 4) {
      case 0: return {BigReal(1), BigReal(0)};
      case 1: return {BigReal(0), BigReal(1)};
      case 2: return {BigReal(-1), BigReal(0)};
      default: return {BigReal(0), BigReal(-1)};
    }
  }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigReal d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
  BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
  BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
  BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }
};

inline BigReal abs(const BigComplex& z) { return sqrt(z.re * z.re + z.im * z.im); }
inline BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

}  // namespace qracah
