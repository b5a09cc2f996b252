#pragma once

#include <cmath>

#include "hyperlaw/algebra.hpp"

namespace hyperlaw {

// Second-order Taylor jet in two variables: value, gradient, Hessian.
struct Jet {
  double v = 0.0;
  Vec2 g;
  Mat22 h;

  static Jet constant(double value) {
    Jet j;
    j.v = value;
    return j;
  }
  static Jet variable(double value, int index) {
    Jet j;
    j.v = value;
    j.g[index] = 1.0;
    return j;
  }
};

// f(a) given f, f', f'' at a.v
inline Jet chain(const Jet& a, double f0, double f1, double f2) {
  Jet r;
  r.v = f0;
  r.g = f1 * a.g;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) r.h(i, k) = f1 * a.h(i, k) + f2 * a.g[i] * a.g[k];
  return r;
}

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v + b.v;
  r.g = a.g + b.g;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) r.h(i, k) = a.h(i, k) + b.h(i, k);
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r;
  r.v = -a.v;
  r.g = -a.g;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) r.h(i, k) = -a.h(i, k);
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v * b.v;
  r.g = b.v * a.g + a.v * b.g;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      r.h(i, k) = a.h(i, k) * b.v + a.g[i] * b.g[k] + a.g[k] * b.g[i] + a.v * b.h(i, k);
  return r;
}

inline Jet operator*(double t, const Jet& a) {
  Jet r;
  r.v = t * a.v;
  r.g = t * a.g;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) r.h(i, k) = t * a.h(i, k);
  return r;
}
inline Jet operator*(const Jet& a, double t) { return t * a; }

inline Jet operator+(const Jet& a, double t) {
  Jet r = a;
  r.v += t;
  return r;
}
inline Jet operator+(double t, const Jet& a) { return a + t; }
inline Jet operator-(const Jet& a, double t) { return a + (-t); }
inline Jet operator-(double t, const Jet& a) { return (-a) + t; }

inline Jet reciprocal(const Jet& a) {
  const double i = 1.0 / a.v;
  return chain(a, i, -i * i, 2 * i * i * i);
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
inline Jet operator/(const Jet& a, double t) { return (1.0 / t) * a; }
inline Jet operator/(double t, const Jet& a) { return t * reciprocal(a); }

inline Jet exp(const Jet& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e);
}
inline Jet log(const Jet& a) { return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
inline Jet pow(const Jet& a, double p) {
  return chain(a, std::pow(a.v, p), p * std::pow(a.v, p - 1),
               p * (p - 1) * std::pow(a.v, p - 2));
}

}  // namespace hyperlaw
