// num.hpp: scalar fields. Complex doubles with a global tolerance, and an
// exact rational-complex field for scenarios whose entries stay rational.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace sheafhist {

using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                           boost::multiprecision::et_off>;

enum class ErrorKind {
  Scenario,     // malformed or inconsistent input document
  Dimension,    // shape mismatch or dimension bound exceeded
  Invariant,    // a validated object failed its defining property
  Commutation,  // generators that were required to commute do not
  Capacity,     // an enumeration cap was hit
  MissingName,  // reference to an undeclared object (unitary, projector, ...)
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Global comparison tolerance for the floating field. Set once at startup.
inline double& tolerance() {
  static double eps = 1e-9;
  return eps;
}

// Upper bound on Hilbert space dimension (kron results included).
inline int& dimension_limit() {
  static int lim = 16;
  return lim;
}

template <class R>
inline constexpr bool exact_field = false;
template <>
inline constexpr bool exact_field<Rat> = true;

inline double real_abs(double x) { return std::fabs(x); }
inline Rat real_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline double real_to_double(double x) { return x; }
inline double real_to_double(const Rat& x) { return x.convert_to<double>(); }

// Doubles are dyadic rationals, so this conversion is exact for Rat.
template <class R>
R real_from_double(double x) {
  return R(x);
}

// Smallest-denominator rational within the tolerance of x, found by walking
// the continued-fraction convergents. Decimal literals such as 0.6 then read
// back as 3/5 instead of the dyadic value of the nearest double. Falls back
// to the exact dyadic value if no small convergent is close enough.
inline Rat rational_snap(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::Invariant, "non-finite number");
  double eps = tolerance() * std::max(1.0, std::fabs(x));
  double rounded = std::round(x);
  if (std::fabs(x - rounded) <= eps) return Rat(static_cast<long long>(rounded));

  double target = std::fabs(x);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = target;
  for (int it = 0; it < 40; ++it) {
    double fa = std::floor(frac);
    if (fa > 1e15) break;
    long long a = static_cast<long long>(fa);
    __int128 p2 = static_cast<__int128>(a) * p1 + p0;
    __int128 q2 = static_cast<__int128>(a) * q1 + q0;
    if (p2 > (1ll << 50) || q2 > (1ll << 50)) break;
    p0 = p1;
    q0 = q1;
    p1 = static_cast<long long>(p2);
    q1 = static_cast<long long>(q2);
    if (q1 > 0 && std::fabs(static_cast<double>(p1) / static_cast<double>(q1) - target) <= eps) {
      Rat out = Rat(p1) / Rat(q1);
      return x < 0 ? Rat(-out) : out;
    }
    double rem = frac - fa;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  return Rat(x);
}

// Scenario documents carry doubles; entering the exact field they snap to
// nearby small rationals, entering the floating field they pass through.
template <class R>
R scenario_real(double x) {
  if constexpr (exact_field<R>)
    return rational_snap(x);
  else
    return x;
}

template <class R>
bool near_zero(const R& x) {
  if constexpr (exact_field<R>)
    return x == 0;
  else
    return real_abs(x) <= tolerance();
}

// Ordering key used wherever a canonical arrangement of matrix entries is
// needed; floats are rounded to 12 decimals so that values such as 1/2 or
// 1/sqrt(2) land far from any rounding boundary.
inline int canon_cmp(double a, double b) {
  long long ka = std::llround(a * 1e12), kb = std::llround(b * 1e12);
  return ka < kb ? -1 : (ka > kb ? 1 : 0);
}
inline int canon_cmp(const Rat& a, const Rat& b) {
  return a < b ? -1 : (a > b ? 1 : 0);
}

template <class R>
struct Cx {
  R re{}, im{};
  Cx() = default;
  Cx(R r) : re(std::move(r)) {}
  Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}

  static Cx from(double r, double i = 0.0) {
    return Cx(real_from_double<R>(r), real_from_double<R>(i));
  }
};

template <class R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class R>
Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class R>
Cx<R> operator-(const Cx<R>& a) {
  return {-a.re, -a.im};
}
template <class R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Cx<R> operator*(const R& s, const Cx<R>& a) {
  return {s * a.re, s * a.im};
}
template <class R>
Cx<R>& operator+=(Cx<R>& a, const Cx<R>& b) {
  a.re += b.re;
  a.im += b.im;
  return a;
}
template <class R>
Cx<R>& operator-=(Cx<R>& a, const Cx<R>& b) {
  a.re -= b.re;
  a.im -= b.im;
  return a;
}

template <class R>
Cx<R> conj(const Cx<R>& a) {
  return {a.re, -a.im};
}

// Squared modulus; stays inside the field (no square roots).
template <class R>
R abs2(const Cx<R>& a) {
  return a.re * a.re + a.im * a.im;
}

// max(|re|, |im|): an exact-friendly magnitude used for all tolerance tests.
template <class R>
R abs1(const Cx<R>& a) {
  R r = real_abs(a.re), i = real_abs(a.im);
  return r < i ? i : r;
}

template <class R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
  R den = abs2(b);
  if (near_zero(den)) throw Error(ErrorKind::Invariant, "complex division by zero");
  Cx<R> n = a * conj(b);
  return {n.re / den, n.im / den};
}

template <class R>
bool cx_zero(const Cx<R>& a) {
  return near_zero(a.re) && near_zero(a.im);
}
template <class R>
bool cx_eq(const Cx<R>& a, const Cx<R>& b) {
  return cx_zero(a - b);
}

template <class R>
int cx_canon_cmp(const Cx<R>& a, const Cx<R>& b) {
  int c = canon_cmp(a.re, b.re);
  return c != 0 ? c : canon_cmp(a.im, b.im);
}

template <class R>
std::pair<double, double> cx_to_double(const Cx<R>& a) {
  return {real_to_double(a.re), real_to_double(a.im)};
}

}  // namespace sheafhist
