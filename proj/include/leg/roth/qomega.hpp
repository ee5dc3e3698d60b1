#pragma once

// Q(w) with w^2 + w + 1 = 0, stored as a + b w.

#include <string>

#include "leg/exact/poly.hpp"

namespace leg {

struct QOmega {
  Q a, b;
  QOmega() = default;
  QOmega(const Q& x) : a(x) {}
  QOmega(long x) : a(x) {}
  QOmega(int x) : a(x) {}
  QOmega(const Q& x, const Q& y) : a(x), b(y) {}
  static QOmega omega() { return {Q(0), Q(1)}; }

  bool is_zero() const { return a == 0 && b == 0; }
  QOmega operator-() const { return {-a, -b}; }
  QOmega& operator+=(const QOmega& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  QOmega& operator-=(const QOmega& o) {
    a -= o.a;
    b -= o.b;
    return *this;
  }
  friend QOmega operator+(QOmega x, const QOmega& y) { return x += y; }
  friend QOmega operator-(QOmega x, const QOmega& y) { return x -= y; }
  // w^2 = -1 - w
  friend QOmega operator*(const QOmega& x, const QOmega& y) {
    const Q bd = x.b * y.b;
    return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
  }
  QOmega& operator*=(const QOmega& o) { return *this = *this * o; }
  Q norm() const { return a * a - a * b + b * b; }
  QOmega inv() const {
    const Q n = norm();
    if (n == 0) throw std::domain_error("division by zero in Q(w)");
    // conjugate a + b w^2 = (a - b) - b w
    return {(a - b) / n, -b / n};
  }
  friend QOmega operator/(const QOmega& x, const QOmega& y) { return x * y.inv(); }
  friend bool operator==(const QOmega& x, const QOmega& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const QOmega& x, const QOmega& y) { return !(x == y); }

  std::string str() const {
    if (b == 0) return a.get_str();
    std::string s = a == 0 ? "" : a.get_str() + (b > 0 ? "+" : "");
    if (b == 1) return s + "w";
    if (b == -1) return s + "-w";
    return s + b.get_str() + "*w";
  }
};

inline bool is_zero(const Q& x) { return x == 0; }
inline bool is_zero(const QOmega& x) { return x.is_zero(); }
inline std::string scalar_str(const Q& x) { return x.get_str(); }
inline std::string scalar_str(const QOmega& x) { return x.str(); }

}  // namespace leg
