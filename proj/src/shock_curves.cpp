#include "hyperlaw/shock_curves.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "hyperlaw/errors.hpp"

namespace hyperlaw {

namespace {

using Z = std::array<double, 3>;

constexpr double kGLx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double kGLw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};
constexpr double kSmallR = 1e-2;

Z operator+(const Z& a, const Z& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Z operator-(const Z& a, const Z& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Z operator*(double t, const Z& a) { return {t * a[0], t * a[1], t * a[2]}; }
double zdot(const Z& a, const Z& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double znorm(const Z& a) { return std::sqrt(zdot(a, a)); }

// H(z) = sigma e(phi) - Phi(r, phi), Phi = (f(U0 + r e) - f(U0)) / r, whose
// zero set through (0, phi_k, lambda_k) is the k-th Hugoniot branch.
class Hugoniot {
public:
  Hugoniot(const System& sys, Vec2 U0) : sys_(sys), U0_(U0), p0_(sys.eval(U0)) {}

  struct Eval {
    Vec2 H;
    std::array<Vec2, 3> cols;  // dH/dr, dH/dphi, dH/dsigma
    Vec2 U;
  };

  Vec2 state(const Z& z) const { return U0_ + z[0] * Vec2{std::cos(z[1]), std::sin(z[1])}; }

  Eval eval(const Z& z) const {
    const double r = z[0], sg = z[2];
    const Vec2 e{std::cos(z[1]), std::sin(z[1])}, ep{-e.y, e.x};
    Eval out;
    out.U = U0_ + r * e;
    if (!sys_.contains(out.U)) throw DomainError("Hugoniot state outside the domain");
    const Point pU = sys_.eval(out.U);
    Vec2 Phi, dPhi_dr;
    if (std::abs(r) >= kSmallR) {
      Phi = (pU.f - p0_.f) / r;
      dPhi_dr = (pU.Df * e - Phi) / r;
    } else {
      for (int k = 0; k < 8; ++k) {
        const double t = 0.5 * (kGLx[k] + 1), w = 0.5 * kGLw[k];
        const Point pt = t == 0 ? p0_ : sys_.eval(U0_ + (t * r) * e);
        Phi += w * (pt.Df * e);
        dPhi_dr += (w * t) * pt.d2f(e, e);
      }
    }
    out.H = sg * e - Phi;
    out.cols = {-dPhi_dr, sg * ep - pU.Df * ep, e};
    return out;
  }

  static Z tangent(const Eval& ev) {
    // null vector of the 2x3 Jacobian: cross product of its rows
    const Z a{ev.cols[0].x, ev.cols[1].x, ev.cols[2].x};
    const Z b{ev.cols[0].y, ev.cols[1].y, ev.cols[2].y};
    Z t{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    const double n = znorm(t);
    return (1.0 / n) * t;
  }

  // Newton on H(z) = 0, t.(z - zk) = target; starts from guess.
  std::optional<Z> correct(Z z, const Z& t, const Z& zk, double target, double tol) const {
    for (int it = 0; it < 25; ++it) {
      Eval ev;
      try {
        ev = eval(z);
      } catch (const DomainError&) {
        return std::nullopt;
      }
      Eigen::Matrix3d J;
      Eigen::Vector3d F;
      for (int c = 0; c < 3; ++c) {
        J(0, c) = ev.cols[c].x;
        J(1, c) = ev.cols[c].y;
        J(2, c) = t[c];
      }
      F << ev.H.x, ev.H.y, zdot(t, z - zk) - target;
      const Eigen::Vector3d d = J.fullPivLu().solve(-F);
      if (!d.allFinite()) return std::nullopt;
      const Z dz{d(0), d(1), d(2)};
      z = z + dz;
      const double size = znorm(dz);
      if (size > 1.0 + 10 * std::abs(target)) return std::nullopt;
      if (size <= tol * 1e-3 * (1 + znorm(z))) break;
      if (it == 24 && size > tol) return std::nullopt;
    }
    try {
      const Eval ev = eval(z);
      if (norm(ev.H) > tol * (1 + std::abs(z[2]))) return std::nullopt;
    } catch (const DomainError&) {
      return std::nullopt;
    }
    return z;
  }

  Vec2 dU(const Z& z, const Z& zt) const {
    const Vec2 e{std::cos(z[1]), std::sin(z[1])}, ep{-e.y, e.x};
    return zt[0] * e + (z[0] * zt[1]) * ep;
  }

  ShockSample sample(const Z& z, const Z& zt, double s) const {
    ShockSample out;
    out.s = s;
    out.z = z;
    out.zt = zt;
    out.U = state(z);
    out.sigma = z[2];
    const Point p = sys_.eval(out.U);
    out.rh_residual = norm(out.sigma * (out.U - U0_) - (p.f - p0_.f));
    out.dissipation_direct = (p.q - p0_.q) - out.sigma * (p.eta - p0_.eta);
    out.relative_entropy = p0_.eta - p.eta - dot(p.grad_eta, U0_ - out.U);
    const Vec2 d = dU(z, zt);
    const double n = norm(d);
    out.T = n > 0 ? d / n : Vec2{};
    return out;
  }

  const Point& base() const { return p0_; }

private:
  const System& sys_;
  Vec2 U0_;
  Point p0_;
};

double angle_between(Vec2 a, Vec2 b) {
  return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

void trace_branch(const Hugoniot& hg, const Z& z0, const Z& t0, int dir, double s_end,
                  const TraceOptions& opt, std::vector<ShockSample>& out, bool& truncated) {
  Z z = z0, t = double(dir) * t0;
  double s = 0;
  Vec2 Tprev = unit(hg.dU(z, t));
  const double step = opt.step;
  while (s_end - std::abs(s) > 1e-6 * step) {
    const double want = std::min(step, s_end - std::abs(s));
    const double speed = norm(hg.dU(z, t));
    double h = want / std::max(speed, 0.05);
    std::optional<Z> next;
    bool domain_hit = false;
    Z tn;
    Vec2 Tn;
    double ds = 0;
    while (true) {
      if (h < opt.min_step) {
        if (domain_hit) {
          truncated = true;
          return;
        }
        throw ContinuationError("Hugoniot continuation stalled", hg.state(z));
      }
      const Z pred = z + h * t;
      next = std::nullopt;
      try {
        hg.eval(pred);
      } catch (const DomainError&) {
        domain_hit = true;
        h /= 2;
        continue;
      }
      next = hg.correct(pred, t, z, h, opt.tol);
      if (!next) {
        h /= 2;
        continue;
      }
      const auto ev = hg.eval(*next);
      tn = Hugoniot::tangent(ev);
      if (zdot(tn, t) < 0) tn = -1.0 * tn;
      const Vec2 d = hg.dU(*next, tn);
      Tn = norm(d) > 0 ? unit(d) : Tprev;
      const double chord = norm(hg.state(*next) - hg.state(z));
      const double theta = angle_between(Tprev, Tn);
      if (zdot(tn, t) < std::cos(0.3) || theta > 0.3 || chord > 2 * want + 1e-12) {
        h /= 2;
        continue;
      }
      ds = chord * (1 + theta * theta / 24);
      break;
    }
    z = *next;
    t = tn;
    Tprev = Tn;
    s += dir * ds;
    out.push_back(hg.sample(z, double(dir) * t, s));
  }
}

}  // namespace

ShockCurve trace_hugoniot(const System& sys, Vec2 U0, int family, const TraceOptions& opt) {
  if (family != 1 && family != 2) throw ArgumentError("trace_hugoniot: family must be 1 or 2");
  if (!(opt.s_min <= 0 && opt.s_max >= 0)) throw ArgumentError("trace_hugoniot: span must contain 0");
  if (!(opt.step > 0)) throw ArgumentError("trace_hugoniot: step must be positive");
  sys.require(U0);
  const int k = family - 1;
  const Point p0 = sys.eval(U0);
  EigenFrame fr = eigenframe(p0);
  ShockCurve curve;
  curve.U0 = U0;
  curve.family = family;
  curve.lambda0 = fr.lambda[k];
  if (fr.tie_break[k]) curve.orientation = "catalog";

  const Hugoniot hg(sys, U0);
  const Vec2 e0 = -fr.r[k];
  const Z z0{0.0, std::atan2(e0.y, e0.x), fr.lambda[k]};
  Z t0 = Hugoniot::tangent(hg.eval(z0));
  if (t0[0] < 0) t0 = -1.0 * t0;

  std::vector<ShockSample> neg, pos;
  trace_branch(hg, z0, t0, -1, -opt.s_min, opt, neg, curve.truncated_negative);
  trace_branch(hg, z0, t0, +1, opt.s_max, opt, pos, curve.truncated_positive);

  std::reverse(neg.begin(), neg.end());
  curve.samples = std::move(neg);
  curve.origin = curve.samples.size();
  curve.samples.push_back(hg.sample(z0, t0, 0.0));
  curve.samples.back().sigma = fr.lambda[k];
  curve.samples.back().U = U0;
  for (auto& s : pos) curve.samples.push_back(s);
  return curve;
}

ShockCurve trace_hugoniot(const System& sys, Vec2 U0, int family, double s_min, double s_max,
                          double step) {
  TraceOptions opt;
  opt.s_min = s_min;
  opt.s_max = s_max;
  opt.step = step;
  return trace_hugoniot(sys, U0, family, opt);
}

LiuLaxReport liu_lax_check(const System& sys, const ShockCurve& curve, double tol) {
  if (curve.samples.size() < 3) throw ArgumentError("liu_lax_check: need at least 3 samples");
  LiuLaxReport rep;
  const auto& S = curve.samples;
  const size_t o = curve.origin;
  auto direction = [&](size_t a, size_t b) {
    // samples a..b inclusive, increasing s
    int sign = 0;
    for (size_t i = a; i < b; ++i) {
      const double d = S[i + 1].sigma - S[i].sigma;
      const int sg = d > 0 ? 1 : (d < 0 ? -1 : 0);
      if (sg == 0) return 0;
      if (sign == 0) sign = sg;
      if (sg != sign) {
        if (i > a) rep.extrema.push_back({S[i].s, S[i].U, S[i].sigma});
        return 0;
      }
    }
    return sign;
  };
  rep.direction_negative = o > 0 ? direction(0, o) : 0;
  rep.direction_positive = o + 1 < S.size() ? direction(o, S.size() - 1) : 0;
  const bool neg_ok = o == 0 || rep.direction_negative != 0;
  const bool pos_ok = o + 1 >= S.size() || rep.direction_positive != 0;
  rep.liu = neg_ok && pos_ok;

  const int k = curve.family - 1;
  int order_neg = 2, order_pos = 2;  // 2: unset
  rep.lax_e = true;
  EigenFrame prev = eigenframe(sys, curve.U0);
  for (size_t i = 0; i < S.size(); ++i) {
    if (i == o) continue;
    double lam;
    try {
      prev = eigenframe(sys.eval(S[i].U), Orientation::normalized, &prev);
      lam = prev.lambda[k];
    } catch (const HyperbolicityError&) {
      ++rep.lax_failures;
      rep.lax_e = false;
      if (!rep.lax_witness) rep.lax_witness = S[i].U;
      continue;
    }
    const double lo = std::min(lam, curve.lambda0), hi = std::max(lam, curve.lambda0);
    const double slack = tol * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (S[i].sigma < lo - slack || S[i].sigma > hi + slack) {
      ++rep.lax_failures;
      rep.lax_e = false;
      if (!rep.lax_witness) rep.lax_witness = S[i].U;
    }
    const int ord = (lam <= S[i].sigma + slack && S[i].sigma <= curve.lambda0 + slack)   ? 1
                    : (curve.lambda0 <= S[i].sigma + slack && S[i].sigma <= lam + slack) ? -1
                                                                                         : 0;
    int& slot = i < o ? order_neg : order_pos;
    slot = slot == 2 ? ord : (slot == ord ? slot : 0);
  }
  rep.lax_order_negative = order_neg == 2 ? 0 : order_neg;
  rep.lax_order_positive = order_pos == 2 ? 0 : order_pos;
  return rep;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double diff = left + right - whole;
  if (std::abs(diff) <= 15 * tol) return left + right + diff / 15;
  if (depth <= 0) throw ToleranceError("dissipation quadrature did not converge");
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

void dissipation_profile(const System& sys, ShockCurve& curve, double tol) {
  auto& S = curve.samples;
  const Hugoniot hg(sys, curve.U0);
  const Point& p0 = hg.base();
  S[curve.origin].dissipation_integral = 0.0;

  // Integral of eta(U0|S) d(sigma) between samples a and b.
  auto interval = [&](const ShockSample& a, const ShockSample& b) {
    const Z& tk = a.zt;
    const Z& zk = a.z;
    const double L = zdot(tk, b.z - a.z);
    auto integrand = [&](double alpha) {
      Z z;
      if (alpha == 0.0) {
        z = a.z;
      } else if (alpha == 1.0) {
        z = b.z;
      } else {
        const Z guess = a.z + alpha * (b.z - a.z);
        auto zc = hg.correct(guess, tk, zk, alpha * L, 1e-12);
        if (!zc) throw ToleranceError("dissipation quadrature: corrector failed inside an interval");
        z = *zc;
      }
      const Z tau = Hugoniot::tangent(hg.eval(z));
      const double dsig = L * tau[2] / zdot(tk, tau);
      const Vec2 U = hg.state(z);
      const Point p = sys.eval(U);
      const double rel = p0.eta - p.eta - dot(p.grad_eta, curve.U0 - U);
      return rel * dsig;
    };
    const double fa = integrand(0), fm = integrand(0.5), fb = integrand(1);
    const double whole = (fa + 4 * fm + fb) / 6;
    return simpson(integrand, 0, 1, fa, fm, fb, whole, tol, 30);
  };

  for (size_t i = curve.origin + 1; i < S.size(); ++i)
    S[i].dissipation_integral = S[i - 1].dissipation_integral + interval(S[i - 1], S[i]);
  for (size_t i = curve.origin; i-- > 0;)
    S[i].dissipation_integral = S[i + 1].dissipation_integral + interval(S[i + 1], S[i]);
}

double dissipation_identity_residual(const ShockSample& s) {
  const double d = std::abs(s.dissipation_direct - s.dissipation_integral);
  const double scale = std::max(std::abs(s.dissipation_direct), std::abs(s.dissipation_integral));
  return scale > 0 ? d / scale : d;
}

RankOneScan rank_one_scan(const System& sys, const ShockCurve& curve, double s_lo, double s_hi) {
  if (!(s_lo > 0)) throw ArgumentError("rank_one_scan: |s| must stay away from 0 (s_lo > 0)");
  if (!(s_hi >= s_lo)) throw ArgumentError("rank_one_scan: empty |s| range");
  RankOneScan out;
  const Mat32 G0 = eval_G(sys, curve.U0);
  for (const auto& smp : curve.samples) {
    const Mat32 d = G0 - eval_G(sys, smp.U);
    out.max_subdet12 = std::max(out.max_subdet12, std::abs(subdet(d, 1, 2)));
    const double a = std::abs(smp.s);
    if (a < s_lo || a > s_hi) continue;
    ++out.samples;
    const double fro = frobenius(d);
    const double v = fro > 0 ? rank_one_residual(d) / fro : 0.0;
    if (v < out.min_normalized) {
      out.min_normalized = v;
      out.witness_s = smp.s;
      out.witness_U = smp.U;
    }
  }
  return out;
}

std::optional<Vec2> curve_point(const ShockCurve& curve, double s) {
  const auto& S = curve.samples;
  if (S.empty() || s < S.front().s || s > S.back().s) return std::nullopt;
  auto it = std::upper_bound(S.begin(), S.end(), s,
                             [](double v, const ShockSample& a) { return v < a.s; });
  if (it == S.end()) return S.back().U;
  if (it == S.begin()) return S.front().U;
  const ShockSample& b = *it;
  const ShockSample& a = *(it - 1);
  const double h = b.s - a.s;
  if (h <= 0) return a.U;
  const double t = (s - a.s) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * a.U + (h10 * h) * a.T + h01 * b.U + (h11 * h) * b.T;
}

ContinuityProbe curve_continuity_probe(const System& sys, Vec2 U0, int family, double delta,
                                       const TraceOptions& opt) {
  if (!(delta >= 0)) throw ArgumentError("curve_continuity_probe: delta must be nonnegative");
  ContinuityProbe out;
  const ShockCurve base = trace_hugoniot(sys, U0, family, opt);
  out.span_lo = base.samples.front().s;
  out.span_hi = base.samples.back().s;
  out.truncated = base.truncated_negative || base.truncated_positive;
  if (delta == 0) return out;
  for (int k = 0; k < 8; ++k) {
    const double a = k * std::numbers::pi / 4;
    const Vec2 V = U0 + delta * Vec2{std::cos(a), std::sin(a)};
    sys.require(V);
    const ShockCurve c = trace_hugoniot(sys, V, family, opt);
    out.truncated = out.truncated || c.truncated_negative || c.truncated_positive;
    out.span_lo = std::max(out.span_lo, c.samples.front().s);
    out.span_hi = std::min(out.span_hi, c.samples.back().s);
    for (const auto& smp : base.samples) {
      const auto q = curve_point(c, smp.s);
      if (!q) continue;
      out.max_displacement = std::max(out.max_displacement, norm(*q - smp.U));
    }
  }
  out.ratio = out.max_displacement / delta;
  return out;
}

std::optional<ShockSample> last_exit(const System& sys, const System& level_sys,
                                     const ShockCurve& curve, double C, int branch, double tol) {
  const auto& S = curve.samples;
  const Hugoniot hg(sys, curve.U0);
  auto g = [&](Vec2 U) { return level_sys.eta(U) - C; };
  // walk outward, remember the last bracket
  std::optional<std::pair<size_t, size_t>> last;
  if (branch >= 0) {
    for (size_t i = curve.origin; i + 1 < S.size(); ++i)
      if ((g(S[i].U) < 0) != (g(S[i + 1].U) < 0)) last = {i, i + 1};
  } else {
    for (size_t i = curve.origin; i > 0; --i)
      if ((g(S[i].U) < 0) != (g(S[i - 1].U) < 0)) last = {i, i - 1};
  }
  if (!last) return std::nullopt;
  const ShockSample& a = S[last->first];
  const ShockSample& b = S[last->second];
  const double L = zdot(a.zt, b.z - a.z);
  auto at = [&](double alpha) -> Z {
    if (alpha <= 0) return a.z;
    if (alpha >= 1) return b.z;
    auto z = hg.correct(a.z + alpha * (b.z - a.z), a.zt, a.z, alpha * L, 1e-12);
    if (!z) throw ContinuationError("last_exit: corrector failed", a.U);
    return *z;
  };
  double lo = 0, hi = 1;
  const bool a_neg = g(a.U) < 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if ((g(hg.state(at(mid))) < 0) == a_neg)
      lo = mid;
    else
      hi = mid;
  }
  const Z z = at(0.5 * (lo + hi));
  const Z zt = Hugoniot::tangent(hg.eval(z));
  const double frac = 0.5 * (lo + hi);
  ShockSample out = hg.sample(z, zdot(zt, a.zt) >= 0 ? zt : -1.0 * zt, a.s + frac * (b.s - a.s));
  return out;
}

bool star_shaped(const ShockCurve& curve, double tol) {
  std::vector<double> ang;
  for (size_t i = 0; i < curve.samples.size(); ++i) {
    if (i == curve.origin) continue;
    const Vec2 d = curve.samples[i].U - curve.U0;
    ang.push_back(std::atan2(d.y, d.x));
  }
  std::sort(ang.begin(), ang.end());
  for (size_t i = 1; i < ang.size(); ++i)
    if (ang[i] - ang[i - 1] < tol) return false;
  if (ang.size() > 1 && ang.front() + 2 * std::numbers::pi - ang.back() < tol) return false;
  return true;
}

}  // namespace hyperlaw
