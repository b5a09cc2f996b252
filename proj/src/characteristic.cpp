#include "hyperlaw/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperlaw/errors.hpp"

namespace hyperlaw {

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 catalog_sign(Vec2 r) {
  if (r.y > 1e-14 || (std::abs(r.y) <= 1e-14 && r.x < 0)) return -r;
  return r;
}

std::string where(Vec2 U) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << U.x << ", " << U.y << ")";
  return os.str();
}

}  // namespace

EigenFrame eigen_decompose(const Mat22& A, Vec2 U) {
  const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);
  const double disc = (a - d) * (a - d) + 4 * b * c;
  const double scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
  if (!std::isfinite(disc) || !(disc > 0) || std::sqrt(disc) <= 1e-13 * scale)
    throw HyperbolicityError("Df has no pair of real distinct eigenvalues at " + where(U), U);
  const double sq = std::sqrt(disc);
  EigenFrame fr;
  fr.U = U;
  fr.lambda = {0.5 * (a + d - sq), 0.5 * (a + d + sq)};
  for (int i = 0; i < 2; ++i) {
    const double lam = fr.lambda[i];
    const Vec2 r0{a - lam, b}, r1{c, d - lam};
    const Vec2 row = norm(r0) >= norm(r1) ? r0 : r1;
    const Vec2 c0{a - lam, c}, c1{b, d - lam};
    const Vec2 col = norm(c0) >= norm(c1) ? c0 : c1;
    fr.r[i] = catalog_sign(unit(perp(row)));
    Vec2 l = unit(perp(col));
    if (dot(l, fr.r[i]) < 0) l = -l;
    fr.l[i] = l;
  }
  return fr;
}

Vec2 grad_lambda(const Point& p, const EigenFrame& fr, int i) {
  const Vec2 r = fr.r[i], l = fr.l[i];
  const double lr = dot(l, r);
  return {dot(l, p.d2f(r, {1, 0})) / lr, dot(l, p.d2f(r, {0, 1})) / lr};
}

EigenFrame eigenframe(const Point& p, Orientation o, const EigenFrame* previous,
                      double gnl_tol) {
  EigenFrame fr = eigen_decompose(p.Df, p.U);
  const double scale = std::max({1.0, std::abs(fr.lambda[0]), std::abs(fr.lambda[1])});
  for (int i = 0; i < 2; ++i) {
    double g = dot(grad_lambda(p, fr, i), fr.r[i]);
    bool flip = false;
    if (o == Orientation::normalized) {
      if (std::abs(g) > gnl_tol * scale) {
        flip = g < 0;
      } else {
        fr.tie_break[i] = true;
        if (previous) flip = dot(fr.r[i], previous->r[i]) < 0;
      }
    }
    if (flip) {
      fr.r[i] = -fr.r[i];
      fr.l[i] = -fr.l[i];
      g = -g;
    }
    fr.gnl[i] = g;
  }
  return fr;
}

EigenFrame eigenframe(const System& sys, Vec2 U, Orientation o, const EigenFrame* previous) {
  return eigenframe(sys.eval(U), o, previous);
}

std::array<double, 2> genuine_nonlinearity(const System& sys, Vec2 U, Orientation o) {
  return eigenframe(sys, U, o).gnl;
}

std::array<double, 2> smoller_johnson(const Point& p, const EigenFrame& fr) {
  return {dot(fr.l[1], p.d2f(fr.r[0], fr.r[0])), dot(fr.l[0], p.d2f(fr.r[1], fr.r[1]))};
}

std::array<double, 2> smoller_johnson(const System& sys, Vec2 U, Orientation o) {
  const Point p = sys.eval(U);
  return smoller_johnson(p, eigenframe(p, o));
}

std::array<double, 2> rarefaction_curvature(const System& sys, Vec2 U, Orientation o) {
  const Point p = sys.eval(U);
  const EigenFrame fr = eigenframe(p, o);
  const auto sj = smoller_johnson(p, fr);
  const double gap = fr.lambda[0] - fr.lambda[1];
  return {sj[0] / gap, -sj[1] / gap};
}

GradientFluxClosedForm gradient_flux_closed_form(const Point& p) {
  const double A = p.Df(0, 1);  // eta_uu
  const double B = p.Df(1, 0);  // eta_vv
  const double C = p.Df(0, 0);  // eta_vu
  const double vvv = p.D2f[1](0, 0), vvu = p.D2f[1](0, 1), vuu = p.D2f[1](1, 1);
  const double uuu = p.D2f[0](1, 1);
  GradientFluxClosedForm cf;
  const double root = std::sqrt(A * B);
  cf.lambda = {C - root, C + root};
  const double s = std::sqrt(A / B), k = A / B, k32 = k * s;
  cf.r = {unit(Vec2{s, -1}), unit(Vec2{-s, -1})};
  const double first = (vvv * A + 3 * B * vuu) / std::sqrt(B);
  const double second = (B * uuu + 3 * A * vvu) / std::sqrt(A);
  cf.G_plus = first + second;
  cf.G_minus = first - second;
  cf.F_plus = k * vvu + s * vuu - uuu - k32 * vvv;
  cf.F_minus = -k * vvu + s * vuu + uuu - k32 * vvv;
  return cf;
}

std::vector<Vec2> sample_grid(const Box& region, int m) {
  if (!region.bounded()) throw ArgumentError("sample_grid: region must be bounded");
  if (m < 1) throw ArgumentError("sample_grid: need at least one point per side");
  std::vector<Vec2> pts;
  pts.reserve(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      pts.push_back({region.lo.x + (i + 0.5) / m * (region.hi.x - region.lo.x),
                     region.lo.y + (j + 0.5) / m * (region.hi.y - region.lo.y)});
  return pts;
}

namespace {

// Open arc of angles (lo, hi), hi - lo <= 2 pi.
struct Arc {
  double lo = -kPi, hi = kPi;
  bool full = true;
  double width() const { return hi - lo; }
};

Arc half_plane(Vec2 a) {
  const double t = std::atan2(a.y, a.x);
  return {t - kPi / 2, t + kPi / 2, false};
}

Arc intersect(const Arc& A, const Arc& B) {
  if (A.full) return B;
  Arc best{0, 0, false};
  for (double shift : {-2 * kPi, 0.0, 2 * kPi}) {
    const double lo = std::max(A.lo, B.lo + shift), hi = std::min(A.hi, B.hi + shift);
    if (hi - lo > best.width()) best = {lo, hi, false};
  }
  return best;
}

Vec2 choose(const Arc& a) {
  const double margin = std::min(1e-6, a.width() / 4);
  for (int k = -4; k <= 4; ++k) {
    const double t = k * kPi / 2;
    if (t > a.lo + margin && t < a.hi - margin) {
      const int q = ((k % 4) + 4) % 4;
      static const Vec2 axes[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      return axes[q];
    }
  }
  const double t = 0.5 * (a.lo + a.hi);
  return {std::cos(t), std::sin(t)};
}

}  // namespace

SectorResult sector_search(const System& sys, const Box& region, int n_samples) {
  if (n_samples < 1) throw ArgumentError("sector_search: n_samples must be positive");
  const int m = std::max(2, static_cast<int>(std::ceil(std::sqrt(double(n_samples)))));
  const auto pts = sample_grid(region, m);
  for (Vec2 U : pts)
    if (!sys.contains(U)) throw DomainError("sector_search: region leaves the domain at " + where(U));

  SectorResult out;
  out.samples = static_cast<int>(pts.size());
  Arc a1, a2;
  EigenFrame prev;
  bool have_prev = false;
  for (Vec2 U : pts) {
    EigenFrame fr;
    try {
      fr = eigenframe(sys.eval(U), Orientation::normalized, have_prev ? &prev : nullptr);
    } catch (const HyperbolicityError& e) {
      out.hyperbolicity_failure = e.point;
      out.witness = e.point;
      out.reason = "strict hyperbolicity fails";
      return out;
    }
    prev = fr;
    have_prev = true;
    a1 = intersect(intersect(a1, half_plane(-fr.r[0])), half_plane(fr.r[1]));
    a2 = intersect(intersect(a2, half_plane(fr.r[0])), half_plane(fr.r[1]));
    const bool e1 = a1.width() <= 1e-12, e2 = a2.width() <= 1e-12;
    if (e1 || e2) {
      out.witness = U;
      out.empty_cone = e1 ? 1 : 2;
      out.reason = e1 ? "no w1 with r1.w1 < 0 < r2.w1 on the region"
                      : "no w2 with r1.w2 > 0 and r2.w2 > 0 on the region";
      return out;
    }
  }
  out.found = true;
  out.w1 = choose(a1);
  out.w2 = choose(a2);
  return out;
}

bool sector_holds(const System& sys, const std::vector<Vec2>& pts, Vec2 w1, Vec2 w2,
                  Vec2* witness) {
  EigenFrame prev;
  bool have_prev = false;
  for (Vec2 U : pts) {
    const EigenFrame fr =
        eigenframe(sys.eval(U), Orientation::normalized, have_prev ? &prev : nullptr);
    prev = fr;
    have_prev = true;
    const bool ok = dot(fr.r[0], w1) < 0 && dot(fr.r[0], w2) > 0 && dot(fr.r[1], w1) > 0 &&
                    dot(fr.r[1], w2) > 0;
    if (!ok) {
      if (witness) *witness = U;
      return false;
    }
  }
  return true;
}

}  // namespace hyperlaw
