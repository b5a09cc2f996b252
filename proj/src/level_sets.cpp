#include "hyperlaw/level_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperlaw/errors.hpp"

namespace hyperlaw {

namespace {

bool inside(const System& sys, const Box& win, Vec2 U) { return win.contains(U) && sys.contains(U); }

double curvature(const Point& p, Vec2 t) {
  return std::abs(quad(p.hess_eta, t, t)) / norm(p.grad_eta);
}

}  // namespace

std::pair<Vec2, double> minimize_eta(const System& sys, const Box& window) {
  const Box win = window.intersect(sys.box());
  if (!win.bounded()) throw ArgumentError("minimize_eta: window must be bounded");
  // coarse scan for a start
  Vec2 x;
  double fx = std::numeric_limits<double>::infinity();
  const int m = 21;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Vec2 U{win.lo.x + (i + 0.5) / m * (win.hi.x - win.lo.x),
                   win.lo.y + (j + 0.5) / m * (win.hi.y - win.lo.y)};
      if (!sys.contains(U)) continue;
      const double v = sys.eta(U);
      if (v < fx) {
        fx = v;
        x = U;
      }
    }
  if (!std::isfinite(fx)) throw DomainError("minimize_eta: window does not meet the domain");

  for (int it = 0; it < 200; ++it) {
    const Point p = sys.eval(x);
    const Vec2 g = p.grad_eta;
    if (norm(g) < 1e-13 * std::max(1.0, std::abs(fx))) break;
    const Mat22& H = p.hess_eta;
    const double D = det(H);
    Vec2 d;
    if (D > 0 && H(0, 0) > 0)
      d = -Vec2{(H(1, 1) * g.x - H(0, 1) * g.y) / D, (-H(1, 0) * g.x + H(0, 0) * g.y) / D};
    else
      d = -g;
    if (dot(d, g) >= 0) d = -g;
    double a = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls, a *= 0.5) {
      const Vec2 y = x + a * d;
      if (!inside(sys, win, y)) continue;
      const double fy = sys.eta(y);
      if (fy <= fx + 1e-4 * a * dot(g, d)) {
        moved = norm(y - x) > 1e-15 * std::max(1.0, norm(x));
        x = y;
        fx = fy;
        break;
      }
    }
    if (!moved) break;
  }
  return {x, fx};
}

std::optional<Vec2> project_to_level(const System& sys, Vec2 U, double C, double tol) {
  const double scale = std::max(1.0, std::abs(C));
  for (int it = 0; it < 60; ++it) {
    if (!sys.contains(U)) return std::nullopt;
    const Point p = sys.eval(U);
    const double r = p.eta - C;
    const double gg = dot(p.grad_eta, p.grad_eta);
    if (gg == 0) return std::nullopt;
    if (std::abs(r) <= tol * scale) return U;
    U = U - (r / gg) * p.grad_eta;
  }
  return std::nullopt;
}

namespace {

std::vector<LevelSample> trace_direction(const System& sys, const Box& win, double C, Vec2 seed,
                                         int dir, const LevelOptions& opt, bool& closed) {
  std::vector<LevelSample> out;
  const double theta = opt.max_turn_deg * std::numbers::pi / 180.0;
  Vec2 x = seed;
  double traveled = 0;
  auto make = [&](Vec2 U) {
    const Point p = sys.eval(U);
    LevelSample s;
    s.U = U;
    s.normal = unit(p.grad_eta);
    s.tangent = perp(s.normal);
    return s;
  };
  out.push_back(make(x));
  while (true) {
    if (out.size() > opt.max_samples)
      throw ContinuationError("level set: sample budget exhausted", x);
    const Point p = sys.eval(x);
    const Vec2 t = dir * perp(unit(p.grad_eta));
    const double kappa = curvature(p, t);
    double h = std::min(opt.max_step, kappa > 0 ? theta / kappa : opt.max_step);

    if (dir > 0 && out.size() > 3) {
      const Vec2 d = seed - x;
      const double along = dot(d, t);
      if (along > 0 && along <= 1.5 * h && std::abs(cross(t, d)) < 0.5 * h &&
          traveled > 4 * h) {
        closed = true;
        return out;
      }
    }
    std::optional<Vec2> next;
    while (true) {
      if (h < 1e-10) return out;  // window or domain boundary
      const Vec2 pred = x + h * t;
      if (!inside(sys, win, pred)) {
        h /= 2;
        continue;
      }
      next = project_to_level(sys, pred, C, opt.tol);
      if (!next || !inside(sys, win, *next)) {
        h /= 2;
        continue;
      }
      const Vec2 tn = dir * perp(unit(sys.eval(*next).grad_eta));
      if (std::acos(std::clamp(dot(t, tn), -1.0, 1.0)) > 2 * theta + 1e-12) {
        h /= 2;
        continue;
      }
      break;
    }
    traveled += norm(*next - x);
    x = *next;
    out.push_back(make(x));
  }
}

}  // namespace

LevelCurve trace_level_set(const System& sys, double C, const LevelOptions& opt) {
  const Box win = opt.window.intersect(sys.box());
  if (!win.bounded()) throw ArgumentError("trace_level_set: window must be bounded");
  LevelCurve curve;
  curve.C = C;
  curve.tilt = sys.tilt_vector();
  curve.window = win;
  const auto [xm, em] = minimize_eta(sys, win);
  curve.seed_min = xm;
  curve.eta_min = em;
  if (!(C > em + 1e-12 * std::max(1.0, std::abs(em))))
    throw EmptyLevelError("level set is empty: C does not exceed the minimum of eta on the window");

  std::optional<Vec2> seed;
  if (opt.seed) seed = project_to_level(sys, *opt.seed, C);
  for (int k = 0; k < 16 && !seed; ++k) {
    const double a = k * std::numbers::pi / 8;
    const Vec2 d{std::cos(a), std::sin(a)};
    // march to the far side of the window
    double hi = 1e-3 * std::max(win.hi.x - win.lo.x, win.hi.y - win.lo.y);
    double lo = 0;
    bool found = false;
    while (inside(sys, win, xm + hi * d)) {
      if (sys.eta(xm + hi * d) > C) {
        found = true;
        break;
      }
      lo = hi;
      hi *= 1.5;
    }
    if (!found) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (sys.eta(xm + mid * d) > C ? hi : lo) = mid;
    }
    seed = project_to_level(sys, xm + 0.5 * (lo + hi) * d, C);
  }
  if (!seed) throw EmptyLevelError("level set does not meet the window");

  bool closed = false;
  auto fwd = trace_direction(sys, win, C, *seed, +1, opt, closed);
  if (closed) {
    curve.samples = std::move(fwd);
    curve.closed = true;
  } else {
    bool dummy = false;
    auto back = trace_direction(sys, win, C, *seed, -1, opt, dummy);
    std::reverse(back.begin(), back.end());
    back.pop_back();  // the seed is fwd[0]
    back.insert(back.end(), fwd.begin(), fwd.end());
    curve.samples = std::move(back);
    curve.clipped = true;
  }
  double t = 0;
  for (size_t i = 0; i < curve.samples.size(); ++i) {
    if (i > 0) t += norm(curve.samples[i].U - curve.samples[i - 1].U);
    curve.samples[i].t = t;
  }
  return curve;
}

const char* to_string(CriticalKind k) {
  switch (k) {
    case CriticalKind::max: return "max";
    case CriticalKind::min: return "min";
    default: return "degenerate";
  }
}

namespace {

double dq_dt(const System& sys, Vec2 U) {
  const Point p = sys.eval(U);
  return dot(p.grad_q, perp(unit(p.grad_eta)));
}

// Point on the level set between a and b at fraction lam.
Vec2 between(const System& sys, Vec2 a, Vec2 b, double lam, double C) {
  const auto P = project_to_level(sys, a + lam * (b - a), C);
  if (!P) throw ContinuationError("level set: projection failed while refining", a);
  return *P;
}

}  // namespace

ExtremaReport qtilde_extrema(const System& sys, const LevelCurve& curve, double tol) {
  ExtremaReport rep;
  const auto& S = curve.samples;
  const size_t n = S.size();
  if (n < 2) return rep;
  std::vector<double> g(n);
  double gmax = 0;
  for (size_t i = 0; i < n; ++i) {
    g[i] = dq_dt(sys, S[i].U);
    gmax = std::max(gmax, std::abs(g[i]));
  }
  // plateau: three consecutive samples with dq/dt ~ 0
  int run = 0;
  for (size_t i = 0; i < n; ++i) {
    run = std::abs(g[i]) <= 1e-10 * std::max(gmax, 1e-300) ? run + 1 : 0;
    if (run >= 3 && !rep.plateau) {
      rep.plateau = true;
      rep.plateau_at = S[i].U;
    }
  }
  if (gmax == 0) return rep;
  const size_t pairs = curve.closed ? n : n - 1;
  for (size_t i = 0; i < pairs; ++i) {
    const size_t j = (i + 1) % n;
    if ((g[i] < 0) == (g[j] < 0)) continue;
    const Vec2 A = S[i].U, B = S[j].U;
    double lo = 0, hi = 1;
    const bool neg_lo = g[i] < 0;
    for (int it = 0; it < 100 && hi - lo > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((dq_dt(sys, between(sys, A, B, mid, curve.C)) < 0) == neg_lo ? lo : hi) = mid;
    }
    const double lam = 0.5 * (lo + hi);
    const Vec2 U = between(sys, A, B, lam, curve.C);
    const Point p = sys.eval(U);
    CriticalPoint cp;
    cp.U = U;
    const double tj = j == 0 ? S[i].t + norm(S[0].U - S[i].U) : S[j].t;
    cp.t = S[i].t + lam * (tj - S[i].t);
    cp.value = p.q;
    const Vec2 nhat = unit(p.grad_eta), t = perp(nhat);
    cp.derivative = dot(p.grad_q, t);
    const double mu = dot(p.grad_q, p.grad_eta) / dot(p.grad_eta, p.grad_eta);
    Mat22 M;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) M(a, b) = p.hess_q(a, b) - mu * p.hess_eta(a, b);
    cp.second_derivative = quad(M, t, t);
    const double s2scale = std::abs(quad(p.hess_q, t, t)) + std::abs(mu * quad(p.hess_eta, t, t));
    cp.kind = std::abs(cp.second_derivative) <= 1e-8 * std::max(s2scale, 1e-300)
                  ? CriticalKind::degenerate
                  : (cp.second_derivative < 0 ? CriticalKind::max : CriticalKind::min);
    try {
      const EigenFrame fr = eigen_decompose(p.Df, U);
      const double r1 = std::abs(cross(nhat, fr.l[0])), r2 = std::abs(cross(nhat, fr.l[1]));
      cp.lagrange_residual = std::min(r1, r2);
      cp.lagrange_family = r1 <= r2 ? 1 : 2;
    } catch (const HyperbolicityError&) {
      const Vec2 row = nhat * p.Df;
      cp.lagrange_residual = norm(row) > 0 ? std::abs(cross(nhat, unit(row))) : 0.0;
    }
    rep.points.push_back(cp);
  }
  return rep;
}

namespace {

std::array<double, 2> coefficients(Vec2 nu, Vec2 w1, Vec2 w2) {
  const double D = cross(w1, w2);
  return {cross(nu, w2) / D, cross(w1, nu) / D};
}

int label_of(const std::array<double, 2>& b, double tol) {
  if (std::abs(b[0]) <= tol || std::abs(b[1]) <= tol) return 0;
  if (b[0] < 0 && b[1] < 0) return 1;
  if (b[0] > 0 && b[1] < 0) return 2;
  if (b[0] > 0 && b[1] > 0) return 3;
  return 4;
}

}  // namespace

LevelDecomposition decompose(const System& sys, const LevelCurve& curve, Vec2 w1, Vec2 w2,
                             const ExtremaReport* extrema) {
  const auto& S = curve.samples;
  const size_t n = S.size();
  LevelDecomposition d;
  d.w1 = w1;
  d.w2 = w2;
  if (std::abs(cross(w1, w2)) < 1e-12) throw ArgumentError("decompose: w1, w2 are parallel");
  constexpr double kZero = 1e-10;

  EigenFrame prev;
  bool have = false;
  for (const auto& s : S) {
    EigenFrame fr;
    try {
      fr = eigenframe(sys.eval(s.U), Orientation::normalized, have ? &prev : nullptr);
    } catch (const HyperbolicityError&) {
      throw DecompositionError("decompose: no eigenframe on the curve", s.U);
    }
    prev = fr;
    have = true;
    const bool ok = dot(fr.r[0], w1) < 0 && dot(fr.r[0], w2) > 0 && dot(fr.r[1], w1) > 0 &&
                    dot(fr.r[1], w2) > 0;
    if (!ok) throw DecompositionError("decompose: sector vectors invalid on the curve", s.U);
  }

  d.labels.assign(n, 0);
  for (size_t i = 0; i < n; ++i) d.labels[i] = label_of(coefficients(S[i].normal, w1, w2), kZero);
  // zero coefficients take the previous label, cyclically
  size_t first_set = n;
  for (size_t i = 0; i < n; ++i)
    if (d.labels[i] != 0) {
      first_set = i;
      break;
    }
  if (first_set == n) throw DecompositionError("decompose: normal never leaves the w axes", S[0].U);
  for (size_t k = 0; k < n; ++k) {
    const size_t i = (first_set + k) % n;
    if (d.labels[i] == 0) {
      ++d.boundary_samples;
      const size_t p = (i + n - 1) % n;
      d.labels[i] = (curve.closed || i > 0) ? d.labels[p] : d.labels[first_set];
    }
  }
  if (!curve.closed)
    for (size_t i = 0; i < first_set; ++i) d.labels[i] = d.labels[first_set];

  // runs
  std::vector<LevelDecomposition::Run> runs;
  std::vector<int> run_label;
  for (size_t i = 0; i < n; ++i) {
    if (i == 0 || d.labels[i] != d.labels[i - 1]) {
      runs.push_back({i, i});
      run_label.push_back(d.labels[i]);
    } else {
      runs.back().last = i;
    }
  }
  if (curve.closed && runs.size() > 1 && run_label.front() == run_label.back()) {
    runs.front().first = runs.back().first;
    runs.pop_back();
    run_label.pop_back();
  }
  for (size_t k = 0; k < runs.size(); ++k) d.arcs[run_label[k] - 1].push_back(runs[k]);

  // exact boundary points between differently labelled neighbours
  auto extend = [&](int label, double v) {
    auto& img = d.images[label - 1];
    if (!img)
      img = std::make_pair(v, v);
    else
      img = std::make_pair(std::min(img->first, v), std::max(img->second, v));
  };
  const size_t pairs = curve.closed ? n : n - 1;
  for (size_t i = 0; i < pairs; ++i) {
    const size_t j = (i + 1) % n;
    if (d.labels[i] == d.labels[j]) continue;
    const auto bi = coefficients(S[i].normal, w1, w2), bj = coefficients(S[j].normal, w1, w2);
    const int which = (bi[0] < 0) != (bj[0] < 0) ? 0 : 1;
    double lo = 0, hi = 1;
    const bool neg = bi[which] < 0;
    for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      const Vec2 P = between(sys, S[i].U, S[j].U, mid, curve.C);
      const auto bm = coefficients(unit(sys.eval(P).grad_eta), w1, w2);
      ((bm[which] < 0) == neg ? lo : hi) = mid;
    }
    const Vec2 P = between(sys, S[i].U, S[j].U, 0.5 * (lo + hi), curve.C);
    const double v = sys.q(P);
    d.boundaries.push_back({P, v, d.labels[i], d.labels[j]});
    extend(d.labels[i], v);
    extend(d.labels[j], v);
  }
  for (size_t i = 0; i < n; ++i) extend(d.labels[i], sys.q(S[i].U));
  if (extrema)
    for (const auto& cp : extrema->points) {
      int lab = label_of(coefficients(unit(sys.eval(cp.U).grad_eta), w1, w2), 0.0);
      if (lab == 0) continue;
      extend(lab, cp.value);
    }
  return d;
}

namespace {

bool distinct(const std::vector<Vec2>& pts, Vec2 U, double tol) {
  for (Vec2 p : pts)
    if (norm(p - U) <= tol) return false;
  return true;
}

}  // namespace

std::vector<Vec2> qtilde_level_points(const System& tsys, const LevelCurve& curve, double K,
                                      const ExtremaReport* ext, double vtol) {
  if (vtol < 0) vtol = 1e-12 * std::max(1.0, std::abs(K));
  std::vector<Vec2> pts;
  if (ext)
    for (const auto& cp : ext->points)
      if (std::abs(cp.value - K) <= vtol && distinct(pts, cp.U, 1e-8)) pts.push_back(cp.U);
  const auto& S = curve.samples;
  std::vector<double> qs;
  for (const auto& s : S) qs.push_back(tsys.q(s.U));
  const size_t n = S.size();
  const size_t pairs = curve.closed ? n : n - 1;
  for (size_t i = 0; i < pairs; ++i) {
    const size_t j = (i + 1) % n;
    const double gi = qs[i] - K, gj = qs[j] - K;
    if ((gi < 0) == (gj < 0)) continue;
    if (std::abs(gi) <= vtol || std::abs(gj) <= vtol) {
      const Vec2 U = std::abs(gi) <= std::abs(gj) ? S[i].U : S[j].U;
      if (distinct(pts, U, 1e-8)) pts.push_back(U);
      continue;
    }
    double lo = 0, hi = 1;
    Vec2 U = S[i].U;
    bool ok = true;
    for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      const auto P = project_to_level(tsys, S[i].U + mid * (S[j].U - S[i].U), curve.C);
      if (!P) {
        ok = false;
        break;
      }
      U = *P;
      ((tsys.q(U) - K < 0) == (gi < 0) ? lo : hi) = mid;
    }
    if (ok && distinct(pts, U, 1e-8)) pts.push_back(U);
  }
  return pts;
}


double adjacent_overlap(const LevelDecomposition& d) {
  double worst = 0;
  for (int a = 0; a < 4; ++a) {
    const int b = (a + 1) % 4;
    if (!d.images[a] || !d.images[b]) continue;
    const double lo = std::max(d.images[a]->first, d.images[b]->first);
    const double hi = std::min(d.images[a]->second, d.images[b]->second);
    worst = std::max(worst, hi - lo);
  }
  return worst;
}

double min_turning(const LevelCurve& curve) {
  const auto& S = curve.samples;
  double m = std::numeric_limits<double>::infinity();
  const size_t pairs = curve.closed ? S.size() : S.size() - 1;
  for (size_t i = 0; i < pairs; ++i) m = std::min(m, cross(S[i].tangent, S[(i + 1) % S.size()].tangent));
  return m;
}

}  // namespace hyperlaw
