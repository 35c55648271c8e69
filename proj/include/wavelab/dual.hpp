#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace wavelab {

/// Forward-mode dual number carrying a value and N directional derivatives.
/// Nesting (T itself a Dual) yields higher derivative orders.
template <int N, class T>
struct Dual {
  T v{};
  std::array<T, N> d{};

  constexpr Dual() = default;
  constexpr Dual(double x) : v(x) {}  // NOLINT: implicit promotion of constants
  constexpr Dual(const T& value, const std::array<T, N>& grad) : v(value), d(grad) {}

  static constexpr Dual seeded(const T& value, int direction) {
    Dual r;
    r.v = value;
    r.d[direction] = T(1.0);
    return r;
  }

  friend constexpr Dual operator+(const Dual& a) { return a; }
  friend constexpr Dual operator-(const Dual& a) {
    Dual r;
    r.v = -a.v;
    for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
    return r;
  }

  friend constexpr Dual operator+(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v + b.v;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
    return r;
  }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v - b.v;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
    return r;
  }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v * b.v;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    Dual r;
    r.v = a.v / b.v;
    const T inv_b2 = T(1.0) / (b.v * b.v);
    for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) * inv_b2;
    return r;
  }

  Dual& operator+=(const Dual& b) { return *this = *this + b; }
  Dual& operator-=(const Dual& b) { return *this = *this - b; }
  Dual& operator*=(const Dual& b) { return *this = *this * b; }
  Dual& operator/=(const Dual& b) { return *this = *this / b; }
};

inline double value_of(double x) { return x; }
template <int N, class T>
double value_of(const Dual<N, T>& x) { return value_of(x.v); }

// chain-rule helper: f(a) with derivative fp(a.v)
template <int N, class T>
constexpr Dual<N, T> dual_chain(const Dual<N, T>& a, const T& f, const T& fp) {
  Dual<N, T> r;
  r.v = f;
  for (int i = 0; i < N; ++i) r.d[i] = fp * a.d[i];
  return r;
}

using std::exp;
using std::log;
using std::pow;
using std::sqrt;

template <int N, class T>
Dual<N, T> sqrt(const Dual<N, T>& a) {
  const T r = sqrt(a.v);
  return dual_chain(a, r, T(0.5) / r);
}

template <int N, class T>
Dual<N, T> exp(const Dual<N, T>& a) {
  const T r = exp(a.v);
  return dual_chain(a, r, r);
}

template <int N, class T>
Dual<N, T> log(const Dual<N, T>& a) {
  return dual_chain(a, log(a.v), T(1.0) / a.v);
}

/// x^e for real constant exponent e; requires x > 0 in value.
template <int N, class T>
Dual<N, T> pow(const Dual<N, T>& a, double e) {
  const T r = pow(a.v, e);
  return dual_chain(a, r, T(e) * pow(a.v, e - 1.0));
}

// first- and second-order duals in three state-space directions
using D1 = Dual<3, double>;
using D2 = Dual<3, D1>;

}  // namespace wavelab
