#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>

namespace hyperlaw {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double& operator[](int i) { return i == 0 ? x : y; }
  double operator[](int i) const { return i == 0 ? x : y; }
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }
inline Vec2 operator*(Vec2 a, double t) { return {t * a.x, t * a.y}; }
inline Vec2 operator/(Vec2 a, double t) { return {a.x / t, a.y / t}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
// Counterclockwise quarter turn.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 unit(Vec2 a) { return a / norm(a); }

struct Mat22 {
  std::array<std::array<double, 2>, 2> a{};

  double& operator()(int i, int j) { return a[i][j]; }
  double operator()(int i, int j) const { return a[i][j]; }
  Vec2 row(int i) const { return {a[i][0], a[i][1]}; }
};

inline Vec2 operator*(const Mat22& m, Vec2 v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y, m(1, 0) * v.x + m(1, 1) * v.y};
}
// Row vector times matrix.
inline Vec2 operator*(Vec2 v, const Mat22& m) {
  return {v.x * m(0, 0) + v.y * m(1, 0), v.x * m(0, 1) + v.y * m(1, 1)};
}
inline double quad(const Mat22& m, Vec2 a, Vec2 b) { return dot(a, m * b); }
inline double det(const Mat22& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }
inline double trace(const Mat22& m) { return m(0, 0) + m(1, 1); }

struct Mat32 {
  std::array<std::array<double, 2>, 3> a{};

  double& operator()(int i, int j) { return a[i][j]; }
  double operator()(int i, int j) const { return a[i][j]; }
};

Mat32 operator+(const Mat32& a, const Mat32& b);
Mat32 operator-(const Mat32& a, const Mat32& b);
Mat32 operator*(double t, const Mat32& a);
double frobenius(const Mat32& m);
Mat32 outer(const std::array<double, 3>& a, Vec2 n);

// Determinant of the 2x2 block made of rows r and s (1-based, in that order).
double subdet(const Mat32& m, int r, int s);

// Second singular value, from the Gram matrix and Cauchy-Binet.
double rank_one_residual(const Mat32& m);

// Axis-aligned open box; infinite bounds allowed.
struct Box {
  Vec2 lo{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  Vec2 hi{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};

  bool contains(Vec2 u) const {
    return u.x > lo.x && u.x < hi.x && u.y > lo.y && u.y < hi.y;
  }
  bool bounded() const {
    return std::isfinite(lo.x) && std::isfinite(lo.y) && std::isfinite(hi.x) &&
           std::isfinite(hi.y);
  }
  Vec2 center() const { return {(lo.x + hi.x) / 2, (lo.y + hi.y) / 2}; }
  Box intersect(const Box& o) const;
  bool inside(const Box& o) const;
};

// Central differences. step <= 0 selects the default
// eps^(1/3) * max(1,|U|) (gradient) or eps^(1/4) * max(1,|U|) (Hessian).
// If domain is given, evaluating outside it throws DomainError.
using ScalarField = std::function<double(Vec2)>;
using VectorField = std::function<Vec2(Vec2)>;

double default_step(Vec2 u, int order);
Vec2 fd_gradient(const ScalarField& fn, Vec2 u, double step = 0.0, const Box* domain = nullptr);
Mat22 fd_hessian(const ScalarField& fn, Vec2 u, double step = 0.0, const Box* domain = nullptr);
// Row i is the gradient of component i.
Mat22 fd_jacobian(const VectorField& fn, Vec2 u, double step = 0.0, const Box* domain = nullptr);

}  // namespace hyperlaw
