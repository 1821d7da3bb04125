#pragma once

#include <cmath>
#include <type_traits>

namespace tps {

/// Forward-mode dual number: value plus one derivative direction. Nesting
/// (Dual<Dual<...>>) yields exact higher-order mixed partials.
template <class T>
struct Dual {
  T v{};  ///< value part
  T d{};  ///< derivative part

  constexpr Dual() = default;
  constexpr Dual(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}
  template <class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
  constexpr Dual(U c) : v(static_cast<double>(c)), d() {}  // NOLINT: implicit by design

  constexpr Dual operator-() const { return {-v, -d}; }

  friend constexpr Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
  }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

/// Innermost value of a (possibly nested) dual number.
inline double primal(double x) { return x; }
template <class T>
double primal(const Dual<T>& x) {
  return primal(x.v);
}

inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double pow(double x, double y) { return std::pow(x, y); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }

template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.v);
  return {e, x.d * e};
}

template <class T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.v), x.d / x.v};
}

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T s = sqrt(x.v);
  return {s, x.d / (s + s)};
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  return {sin(x.v), x.d * cos(x.v)};
}

template <class T>
Dual<T> cos(const Dual<T>& x) {
  return {cos(x.v), -(x.d * sin(x.v))};
}

/// Integer power by repeated multiplication; valid for any base sign.
template <class T>
T powi(const T& x, long long n) {
  if (n < 0) return T(1.0) / powi(x, -n);
  T acc(1.0);
  T base = x;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

/// General power via exp(y log x); requires a positive base.
template <class T>
Dual<T> pow(const Dual<T>& x, const Dual<T>& y) {
  return exp(y * log(x));
}

}  // namespace tps
