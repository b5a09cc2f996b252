// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyperlaw/characteristic.hpp"
#include "hyperlaw/cli.hpp"
#include "hyperlaw/errors.hpp"
#include "hyperlaw/level_sets.hpp"
#include "hyperlaw/shock_curves.hpp"
#include "hyperlaw/tn.hpp"
#include "hyperlaw/transform.hpp"

using namespace hyperlaw;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

SystemSpec make_spec(const std::string& kind, std::map<std::string, double> params = {},
                     const std::string& family = "") {
  SystemSpec s;
  s.kind = kind;
  s.family = family;
  s.params = std::move(params);
  return s;
}

Box box(double x0, double x1, double y0, double y1) {
  Box b;
  b.lo = {x0, y0};
  b.hi = {x1, y1};
  return b;
}

std::vector<Vec2> random_points(const Box& b, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> x(b.lo.x, b.hi.x), y(b.lo.y, b.hi.y);
  std::vector<Vec2> out;
  for (int i = 0; i < n; ++i) {
    const double px = x(rng);
    out.push_back({px, y(rng)});
  }
  return out;
}

System p_exp() { return make_system(make_spec("p_system", {{"a", 1}, {"b", 1}}, "exp")); }
System gamma_law(double g) { return make_system(make_spec("gamma_law", {{"kappa", 1}, {"gamma", g}})); }

System grad_flux() {
  return make_system(make_spec("gradient_flux", {{"a", 2},
                                                 {"b", 0.3},
                                                 {"c", 1.5},
                                                 {"w1", 0.5},
                                                 {"alpha1", 0.7},
                                                 {"beta1", -0.4},
                                                 {"w2", 0.3},
                                                 {"alpha2", -0.5},
                                                 {"beta2", 0.9},
                                                 {"w3", 0.2},
                                                 {"alpha3", 0.3},
                                                 {"beta3", 0.3}}));
}

// Eigenpairs of a finite-difference Jacobian, ascending, unit, second component negative.
std::pair<std::array<double, 2>, std::array<Vec2, 2>> fd_eigen(const System& sys, Vec2 U) {
  const Mat22 A = fd_jacobian([&](Vec2 x) { return sys.flux(x); }, U);
  const double tr = trace(A), disc = std::sqrt(0.25 * tr * tr - det(A));
  std::array<double, 2> lam{0.5 * tr - disc, 0.5 * tr + disc};
  std::array<Vec2, 2> r;
  for (int i = 0; i < 2; ++i) {
    const Vec2 a{A(0, 1), lam[i] - A(0, 0)}, b{lam[i] - A(1, 1), A(1, 0)};
    Vec2 v = unit(norm(a) > norm(b) ? a : b);
    if (v.y > 0 || (v.y == 0 && v.x < 0)) v = -v;
    r[i] = v;
  }
  return {lam, r};
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Timer t;
  const System sys = grad_flux();
  double lam_err = 0, r_err = 0;
  for (Vec2 U : random_points(box(-2, 2, -2, 2), 1000, 101)) {
    const GradientFluxClosedForm cf = gradient_flux_closed_form(sys.eval(U));
    const auto [lam, r] = fd_eigen(sys, U);
    for (int i = 0; i < 2; ++i) {
      lam_err = std::max(lam_err, std::abs(cf.lambda[i] - lam[i]));
      r_err = std::max(r_err, norm(cf.r[i] - r[i]));
    }
  }
  const double secs = t.seconds();
  Outcome o;
  o.pass = lam_err < 1e-6 && r_err < 1e-6 && secs < 5;
  o.detail = "max |dlambda| " + sci(lam_err) + ", max |dr| " + sci(r_err) + ", " + sci(secs) + " s";
  return o;
}

Outcome criterion2() {
  const System sys = grad_flux();
  const double band = 1e-9;
  int compared = 0, agree = 0, neutral = 0;
  auto cmp = [&](double direct, bool expect_positive, double closed) {
    if (std::abs(direct) <= band || std::abs(closed) <= band) {
      ++neutral;
      return;
    }
    ++compared;
    agree += (direct > 0) == expect_positive;
  };
  for (Vec2 U : random_points(box(-2, 2, -2, 2), 1000, 202)) {
    const Point p = sys.eval(U);
    const EigenFrame fr = eigenframe(p, Orientation::catalog);
    const GradientFluxClosedForm cf = gradient_flux_closed_form(p);
    const auto sj = smoller_johnson(p, fr);
    // r_1.grad(lambda_1) = -G_minus / (2 sqrt(eta_vv)), r_2.grad(lambda_2) = -G_plus / (...)
    cmp(fr.gnl[0], cf.G_minus < 0, cf.G_minus);
    cmp(fr.gnl[1], cf.G_plus < 0, cf.G_plus);
    cmp(sj[0], cf.F_plus > 0, cf.F_plus);
    cmp(sj[1], cf.F_minus > 0, cf.F_minus);
  }
  Outcome o;
  o.pass = compared > 3000 && agree == compared;
  o.detail = std::to_string(agree) + "/" + std::to_string(compared) + " signs agree, " +
             std::to_string(neutral) + " in the neutral band";
  return o;
}

Outcome criterion3() {
  const System sys = gamma_law(2.0);
  double err = 0, rh = 0, lo = INFINITY, hi = 0;
  bool liu = true, lax = true;
  int n = 0;
  for (int k = 1; k <= 2; ++k) {
    const ShockCurve c = trace_hugoniot(sys, {1, 0}, k, -25, 25, 0.05);
    for (const auto& s : c.samples) {
      rh = std::max(rh, s.rh_residual);
      const double rho = s.U.x;
      lo = std::min(lo, rho);
      hi = std::max(hi, rho);
      if (rho < 0.2 || rho > 5) continue;
      // closed form from (1, 0) with P = rho^2
      const double root = std::sqrt((rho * rho - 1) * (rho - 1) / rho);
      const double sg = rho > 1 ? 1.0 : -1.0;
      const double v = k == 1 ? -sg * root : sg * root;
      err = std::max(err, std::abs(s.U.y / rho - v));
      ++n;
    }
    const auto ll = liu_lax_check(sys, c);
    liu = liu && ll.liu;
    lax = lax && ll.lax_e;
  }
  Outcome o;
  o.pass = err < 1e-6 && rh < 1e-8 && liu && lax && lo <= 0.2 && hi >= 5 && n > 100;
  o.detail = "max |v - v_closed| " + sci(err) + " over " + std::to_string(n) +
             " samples, rho in [" + sci(lo) + ", " + sci(hi) + "], max RH " + sci(rh) +
             ", Liu " + (liu ? "yes" : "no") + ", Lax E " + (lax ? "yes" : "no");
  return o;
}

Outcome criterion4() {
  struct Case {
    std::string name;
    System sys;
    std::vector<Vec2> bases;
  };
  std::vector<Case> cases{{"p-system", p_exp(), {{0, 0}, {0.5, -0.3}}},
                          {"gamma=2", gamma_law(2.0), {{1, 0}, {2, 0.5}}},
                          {"gamma=3", gamma_law(3.0), {{1, 0}, {2, 0.5}}}};
  double worst = 0, min_mag = INFINITY;
  bool negative = true;
  int curves = 0, checked = 0;
  for (auto& cs : cases)
    for (Vec2 b : cs.bases)
      for (int k = 1; k <= 2; ++k) {
        ShockCurve c = trace_hugoniot(cs.sys, b, k, -3, 3, 0.05);
        dissipation_profile(cs.sys, c);
        std::vector<const ShockSample*> pts;
        for (const auto& s : c.samples)
          if (s.s != 0.0) pts.push_back(&s);
        const size_t m = std::min<size_t>(50, pts.size());
        for (size_t j = 0; j < m; ++j) {
          const ShockSample& s = *pts[j * (pts.size() - 1) / std::max<size_t>(1, m - 1)];
          worst = std::max(worst, dissipation_identity_residual(s));
          ++checked;
        }
        for (const auto* s : pts)
          if (s->s > 0) {
            negative = negative && s->dissipation_direct < 0;
            min_mag = std::min(min_mag, std::abs(s->dissipation_direct));
          }
        ++curves;
      }
  Outcome o;
  o.pass = worst < 1e-6 && negative && checked == 50 * curves;
  o.detail = std::to_string(curves) + " curves, " + std::to_string(checked) +
             " samples, max relative residual " + sci(worst) + ", dissipation " +
             (negative ? "negative" : "NOT negative") + " for s > 0, min magnitude " + sci(min_mag);
  return o;
}

Outcome criterion5() {
  struct Case {
    std::string name;
    System sys;
    std::vector<Vec2> bases;
  };
  const System lag = to_lagrangian(gamma_law(2.0), 0.1, 20).system;
  std::vector<Case> cases{
      {"p_system/exp", p_exp(), {{0, 0}, {1, 1}, {-1, -0.5}}},
      {"p_system/power", make_system(make_spec("p_system", {{"a", 1}, {"b", 2}}, "power")),
       {{1, 0}, {2, 0.5}}},
      {"p_system/shifted_power",
       make_system(make_spec("p_system", {{"a", 1}, {"b", 0.5}, {"v0", 1}}, "shifted_power")),
       {{0.5, 0}, {1, -0.5}}},
      {"gamma_law 2", gamma_law(2.0), {{1, 0}, {2, 1}}},
      {"gamma_law 3", gamma_law(3.0), {{1, 0}, {2, 1}}},
      {"shallow_water", make_system(make_spec("shallow_water")), {{1, 0}, {2, 1}}},
      {"gradient_flux", grad_flux(), {{0, 0}, {0.5, 0.5}}},
      {"two_burgers", make_system(make_spec("two_burgers", {{"f2_b", 4}})), {{0, 0}, {0.5, -0.5}}},
      {"lagrangian gamma 2", lag, {{1, 0}, {0.5, 0.3}}}};
  double worst = INFINITY;
  std::string where;
  int scanned = 0, skipped = 0;
  for (auto& cs : cases)
    for (Vec2 b : cs.bases)
      for (int k = 1; k <= 2; ++k) {
        const ShockCurve c = trace_hugoniot(cs.sys, b, k, -5, 5, 0.05);
        if (!liu_lax_check(cs.sys, c).liu) {
          ++skipped;
          continue;
        }
        const RankOneScan scan = rank_one_scan(cs.sys, c, 0.1, 5);
        if (scan.samples == 0) continue;
        ++scanned;
        if (scan.min_normalized < worst) {
          worst = scan.min_normalized;
          where = cs.name;
        }
      }
  Outcome o;
  o.pass = scanned >= 30 && worst > 1e-6;
  o.detail = std::to_string(scanned) + " Liu-verified curves (" + std::to_string(skipped) +
             " not Liu, skipped), min normalized rank-one residual " + sci(worst) + " (" + where + ")";
  return o;
}

Outcome criterion6() {
  Timer t;
  const System fig = tilt(p_exp(), {-2, 0});
  const LevelCurve c = trace_level_set(fig, 2.0);
  const ExtremaReport rep = qtilde_extrema(fig, c);
  double lag = 0;
  for (const auto& p : rep.points) lag = std::max(lag, p.lagrange_residual);
  size_t worst_count = 0;
  int combos = 0;
  for (double c1 : {-2.0, -1.0, 0.0, 1.0, 2.0})
    for (double C : {0.5, 2.0, 4.0, 6.0, 9.0}) {
      const System sys = tilt(p_exp(), {c1, 0.5 * c1});
      const double level = minimize_eta(sys, LevelOptions::default_window()).second + C;
      const LevelCurve lc = trace_level_set(sys, level);
      const ExtremaReport r = qtilde_extrema(sys, lc);
      worst_count = std::max(worst_count, r.points.size());
      for (const auto& p : r.points) lag = std::max(lag, p.lagrange_residual);
      ++combos;
    }
  const double secs = t.seconds();
  Outcome o;
  o.pass = c.closed && rep.points.size() == 4 && !rep.plateau && combos == 25 &&
           worst_count <= 4 && lag < 1e-6 && secs < 30;
  o.detail = "figure level set: " + std::to_string(rep.points.size()) + " extrema; grid of " +
             std::to_string(combos) + ": at most " + std::to_string(worst_count) +
             "; max Lagrange residual " + sci(lag) + ", " + sci(secs) + " s";
  return o;
}

// Forward construction from the definition with general directions.
std::array<Mat32, 4> synthesize(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> kap(1.2, 4.0), ang(0, M_PI);
  for (;;) {
    Mat32 P;
    for (auto& row : P.a)
      for (double& x : row) x = g(rng);
    std::vector<Vec2> n(4);
    for (auto& v : n) {
      const double th = ang(rng);
      v = {std::cos(th), std::sin(th)};
    }
    const double d = cross(n[2], n[3]);
    if (std::abs(d) < 0.2) continue;
    std::vector<Row3> a(4);
    for (int i = 0; i < 2; ++i)
      for (double& x : a[i]) x = g(rng);
    // a_3 (x) n_3 + a_4 (x) n_4 = -(a_1 (x) n_1 + a_2 (x) n_2) =: M
    for (int r = 0; r < 3; ++r) {
      const Vec2 m{-(a[0][r] * n[0].x + a[1][r] * n[1].x), -(a[0][r] * n[0].y + a[1][r] * n[1].y)};
      // solve [n3 n4]^T coefficients: m = a3 n3 + a4 n4
      a[2][r] = cross(m, n[3]) / d;
      a[3][r] = cross(n[2], m) / d;
    }
    const std::vector<double> kappa{kap(rng), kap(rng), kap(rng), kap(rng)};
    const auto X = tn_synthesize(P, a, n, kappa);
    return {X[0], X[1], X[2], X[3]};
  }
}

Outcome criterion7() {
  Timer t;
  std::mt19937_64 rng(2024);
  int sign_ok = 0, solved = 0;
  double worst_recon = 0;
  for (int k = 0; k < 100; ++k) {
    const auto X = synthesize(rng);
    if (!tn_sign_test(X).excluded) ++sign_ok;
    TNSolveOptions opt;
    opt.seed = static_cast<std::uint64_t>(k);
    const TNSolveResult r = tn_solve(X, opt);
    if (r.success) {
      ++solved;
      worst_recon = std::max(worst_recon, r.reconstruction_error);
    } else {
      worst_recon = INFINITY;
    }
  }
  std::normal_distribution<double> g;
  int failed = 0;
  double min_res = INFINITY;
  for (int k = 0; k < 100; ++k) {
    std::array<Mat32, 4> X;
    for (auto& M : X)
      for (auto& row : M.a)
        for (double& x : row) x = g(rng);
    TNSolveOptions opt;
    opt.seed = static_cast<std::uint64_t>(1000 + k);
    const TNSolveResult r = tn_solve(X, opt);
    min_res = std::min(min_res, r.residual);
    failed += !r.success && r.residual > 1e-4;
  }
  const PlantedT4 pl = planted_t4();
  SearchOptions so;
  so.tilts = {{0, 0}};
  so.levels = {pl.level};
  so.budget = 200;
  so.seed = 1;
  const SearchReport sr = t4_search(pl.system, so);
  Outcome o;
  o.pass = sign_ok == 100 && solved == 100 && worst_recon < 1e-8 && failed == 100 &&
           sr.passed >= 1 && sr.best_residual < 1e-10;
  o.detail = "synthesized: " + std::to_string(sign_ok) + "/100 pass sign test, " +
             std::to_string(solved) + "/100 solved, max reconstruction error " + sci(worst_recon) +
             "; random: " + std::to_string(failed) + "/100 fail, min residual " + sci(min_res) +
             "; planted: residual " + sci(sr.best_residual) + ", " + sci(t.seconds()) + " s";
  return o;
}

Outcome criterion8() {
  Timer t;
  struct Case {
    std::string name;
    System sys;
    Box window, region;
  };
  const System sw = make_system(make_spec("shallow_water", {{"g", 9.81}}));
  SystemSpec burgers = make_spec("two_burgers", {{"f1_a", 1}, {"f2_a", 1}, {"f2_b", 4}});
  burgers.domain = box(-1.5, 1.5, -1.5, 1.5);
  const Box lag_window = box(0.15, 8, -6, 6), lag_region = box(0.2, 5, -2, 2);
  std::vector<Case> cases{
      {"p-system", p_exp(), LevelOptions::default_window(), box(-2, 2, -2, 2)},
      {"gamma=2 lagrangian", to_lagrangian(gamma_law(2.0), 0.1, 10).system, lag_window, lag_region},
      {"gamma=3 lagrangian", to_lagrangian(gamma_law(3.0), 0.1, 10).system, lag_window, lag_region},
      {"shallow water lagrangian", to_lagrangian(sw, 0.1, 10).system, lag_window, lag_region},
      {"two burgers", make_system(burgers), box(-1.4, 1.4, -1.4, 1.4), box(-1.4, 1.4, -1.4, 1.4)}};
  long passed = 0, examined = 0;
  std::string detail;
  for (auto& cs : cases) {
    SearchOptions so;
    so.seed = 20240601;
    so.level.window = cs.window;
    so.region = cs.region;
    so.strategy = Strategy::reduced;
    so.budget = 1000000;
    const SearchReport red = t4_search(cs.sys, so);
    so.strategy = Strategy::random;
    so.budget = 10000;
    const SearchReport rnd = t4_search(cs.sys, so);
    passed += red.passed + rnd.passed;
    examined += red.examined + rnd.examined;
    detail += "; " + cs.name + ": " + std::to_string(red.curves) + " curves, " +
              std::to_string(red.examined) + "+" + std::to_string(rnd.examined) + " examined, " +
              std::to_string(red.passed + rnd.passed) + " passed";
  }
  const double secs = t.seconds();
  Outcome o;
  o.pass = passed == 0 && secs < 600;
  o.detail = std::to_string(examined) + " candidates, " + std::to_string(passed) + " passed, " +
             sci(secs) + " s" + detail;
  return o;
}

Outcome criterion9() {
  // Isentropic Euler with P = kappa rho^gamma against the catalog p-system p = kappa v^-gamma.
  double form_err = 0;
  for (double g : {1.4, 2.0, 3.0}) {
    const double kappa = 0.8;
    const System src = make_system(make_spec("isentropic_euler", {{"kappa", kappa}, {"gamma", g}}));
    const System lag = to_lagrangian(src, 0.1, 10).system;
    const System ps = make_system(make_spec("p_system", {{"a", kappa}, {"b", g}}, "power"));
    for (Vec2 V : random_points(box(0.11, 9.9, -3, 3), 300, 909)) {
      const Mat32 A = eval_G(lag, V), B = eval_G(ps, V);
      form_err = std::max(form_err, frobenius(A - B) / std::max(1.0, frobenius(B)));
    }
  }

  int shocks = 0, rh_ok = 0, sign_ok = 0;
  double worst_rh = 0;
  const System src = gamma_law(2.0);
  const Transformed t = to_lagrangian(src, 0.1, 20);
  for (Vec2 base : {Vec2{1, 0}, Vec2{2, 1}, Vec2{0.5, -0.4}})
    for (int k = 1; k <= 2 && shocks < 100; ++k) {
      const ShockCurve c = trace_hugoniot(src, base, k, -2, 2, 0.1);
      for (const auto& s : c.samples) {
        if (s.s == 0.0 || s.U.x < 0.1 || s.U.x > 20 || shocks >= 100) continue;
        const auto r = shock_correspondence_check(src, t.system, t.record, base, s.U, s.sigma);
        ++shocks;
        worst_rh = std::max(worst_rh, r.target_rh);
        rh_ok += r.target_rh < 1e-6;
        sign_ok += r.sign_preserved;
      }
    }

  // Convexity transfer, both directions: a convex entropy and one that is
  // convex only where e^u1 > 4.
  Model model = [](const Jet& u1, const Jet& u2) {
    return Triple{u2, u1, exp(u1) + 0.5 * u2 * u2 - 2.0 * u1 * u2, Jet::constant(0.0)};
  };
  const System mixed("mixed", model, Box{}, make_spec("custom"));
  auto pd = [](const Mat22& h) { return h(0, 0) > 0 && det(h) > 0; };
  int samples = 0, agree = 0, convex = 0, nonconvex = 0;
  for (const System* s : {&src, &mixed}) {
    const Transformed tt = to_lagrangian(*s, 0.2, 5);
    for (Vec2 U : random_points(box(0.2, 5, -3, 3), 1000, 77)) {
      const bool a = pd(s->eval(U).hess_eta);
      const bool b = pd(tt.system.eval(map_state(U)).hess_eta);
      ++samples;
      agree += a == b;
      (a ? convex : nonconvex)++;
    }
  }
  Outcome o;
  o.pass = form_err < 1e-10 && shocks == 100 && rh_ok == 100 && sign_ok == 100 &&
           agree == samples && convex > 0 && nonconvex > 0;
  o.detail = "p-system form error " + sci(form_err) + "; " + std::to_string(rh_ok) + "/" +
             std::to_string(shocks) + " shocks within 1e-6 (max " + sci(worst_rh) + "), " +
             std::to_string(sign_ok) + " keep the dissipation sign; convexity agrees at " +
             std::to_string(agree) + "/" + std::to_string(samples) + " samples (" +
             std::to_string(convex) + " convex, " + std::to_string(nonconvex) + " not)";
  return o;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hyperlaw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome criterion10() {
  const fs::path configs = fs::path(HYPERLAW_SOURCE_DIR) / "configs";
  const fs::path root = fs::temp_directory_path() / "hyperlaw_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> runs{
      {"analyze", "--config", (configs / "p_system.json").string()},
      {"hugoniot", "--config", (configs / "p_system.json").string()},
      {"levelset", "--config", (configs / "p_system.json").string()},
      {"figure8", "--config", (configs / "figure8.json").string()},
      {"t4-search", "--config", (configs / "planted.json").string(), "--seed", "11"},
      {"t4-search", "--config", (configs / "two_burgers.json").string(), "--seed", "11",
       "--budget", "2000"}};
  Outcome o;
  int files = 0, same = 0;
  for (const char* run : {"a", "b"}) {
    // Second run with a different worker count.
    if (std::string(run) == "b")
      setenv("HYPERLAW_THREADS", "3", 1);
    else
      setenv("HYPERLAW_THREADS", "1", 1);
    for (size_t i = 0; i < runs.size(); ++i) {
      auto args = runs[i];
      args.push_back("--out");
      args.push_back((root / run / std::to_string(i)).string());
      if (cli(args) != 0) {
        o.pass = false;
        o.detail = "command failed: " + runs[i][0];
        return o;
      }
    }
  }
  unsetenv("HYPERLAW_THREADS");
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension();
    if (ext != ".json" && ext != ".csv") continue;
    ++files;
    same += slurp(e.path()) == slurp(root / "b" / fs::relative(e.path(), root / "a"));
  }
  o.pass = files >= 8 && same == files;
  o.detail = std::to_string(same) + "/" + std::to_string(files) +
             " JSON/CSV files byte-identical across two runs (1 and 3 threads)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  // Optional argument: run a single criterion.
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
