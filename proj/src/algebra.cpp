#include "hyperlaw/algebra.hpp"

#include <algorithm>
#include <string>

#include "hyperlaw/errors.hpp"

namespace hyperlaw {

Mat32 operator+(const Mat32& a, const Mat32& b) {
  Mat32 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Mat32 operator-(const Mat32& a, const Mat32& b) {
  Mat32 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Mat32 operator*(double t, const Mat32& a) {
  Mat32 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = t * a(i, j);
  return c;
}

double frobenius(const Mat32& m) {
  double s = 0.0;
  for (const auto& row : m.a)
    for (double v : row) s += v * v;
  return std::sqrt(s);
}

Mat32 outer(const std::array<double, 3>& a, Vec2 n) {
  Mat32 m;
  for (int i = 0; i < 3; ++i) {
    m(i, 0) = a[i] * n.x;
    m(i, 1) = a[i] * n.y;
  }
  return m;
}

double subdet(const Mat32& m, int r, int s) {
  if (r < 1 || r > 3 || s < 1 || s > 3 || r == s)
    throw ArgumentError("subdet: invalid row pair (" + std::to_string(r) + "," +
                        std::to_string(s) + ")");
  const int i = r - 1, j = s - 1;
  return m(i, 0) * m(j, 1) - m(i, 1) * m(j, 0);
}

double rank_one_residual(const Mat32& m) {
  double g00 = 0, g01 = 0, g11 = 0;
  for (int i = 0; i < 3; ++i) {
    g00 += m(i, 0) * m(i, 0);
    g01 += m(i, 0) * m(i, 1);
    g11 += m(i, 1) * m(i, 1);
  }
  const double tr = g00 + g11;
  if (tr == 0.0) return 0.0;
  const double minors = std::pow(subdet(m, 1, 2), 2) + std::pow(subdet(m, 1, 3), 2) +
                        std::pow(subdet(m, 2, 3), 2);
  const double disc = std::sqrt(std::max(0.0, (g00 - g11) * (g00 - g11) + 4 * g01 * g01));
  const double s1sq = 0.5 * (tr + disc);
  return std::sqrt(minors / s1sq);
}

Box Box::intersect(const Box& o) const {
  Box b;
  b.lo = {std::max(lo.x, o.lo.x), std::max(lo.y, o.lo.y)};
  b.hi = {std::min(hi.x, o.hi.x), std::min(hi.y, o.hi.y)};
  return b;
}

bool Box::inside(const Box& o) const {
  return lo.x >= o.lo.x && lo.y >= o.lo.y && hi.x <= o.hi.x && hi.y <= o.hi.y;
}

double default_step(Vec2 u, int order) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(1.0, norm(u));
  return (order == 1 ? std::cbrt(eps) : std::pow(eps, 0.25)) * scale;
}

namespace {

Vec2 checked(const Box* domain, Vec2 p) {
  if (domain && !domain->contains(p))
    throw DomainError("finite-difference stencil leaves the domain at (" +
                      std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
  return p;
}

}  // namespace

Vec2 fd_gradient(const ScalarField& fn, Vec2 u, double step, const Box* domain) {
  const double h = step > 0 ? step : default_step(u, 1);
  Vec2 g;
  for (int k = 0; k < 2; ++k) {
    Vec2 e;
    e[k] = h;
    g[k] = (fn(checked(domain, u + e)) - fn(checked(domain, u - e))) / (2 * h);
  }
  return g;
}

Mat22 fd_hessian(const ScalarField& fn, Vec2 u, double step, const Box* domain) {
  const double h = step > 0 ? step : default_step(u, 2);
  const Vec2 ex{h, 0}, ey{0, h};
  const double f0 = fn(checked(domain, u));
  Mat22 H;
  H(0, 0) = (fn(checked(domain, u + ex)) - 2 * f0 + fn(checked(domain, u - ex))) / (h * h);
  H(1, 1) = (fn(checked(domain, u + ey)) - 2 * f0 + fn(checked(domain, u - ey))) / (h * h);
  H(0, 1) = H(1, 0) = (fn(checked(domain, u + ex + ey)) - fn(checked(domain, u + ex - ey)) -
                       fn(checked(domain, u - ex + ey)) + fn(checked(domain, u - ex - ey))) /
                      (4 * h * h);
  return H;
}

Mat22 fd_jacobian(const VectorField& fn, Vec2 u, double step, const Box* domain) {
  const double h = step > 0 ? step : default_step(u, 1);
  Mat22 J;
  for (int k = 0; k < 2; ++k) {
    Vec2 e;
    e[k] = h;
    const Vec2 d = (fn(checked(domain, u + e)) - fn(checked(domain, u - e))) / (2 * h);
    J(0, k) = d.x;
    J(1, k) = d.y;
  }
  return J;
}

}  // namespace hyperlaw
