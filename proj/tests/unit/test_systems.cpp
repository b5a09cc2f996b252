#include <doctest.h>

#include "hyperlaw/errors.hpp"
#include "hyperlaw/systems.hpp"
#include "helpers.hpp"

using namespace hyperlaw;
using namespace testing_helpers;

namespace {

System two_burgers_10() {
  return make_system(spec("two_burgers", {{"f1_a", 1}, {"f2_a", 1}, {"f2_b", 10}}));
}

// Central differences at h and h/2 combined to cancel the h^2 term; the plain
// default step is too coarse near rho_min for 1e-6 on second derivatives.
Mat22 hessian_oracle(const ScalarField& fn, Vec2 U, const Box* dom) {
  const double h = 2e-3 * std::max(1.0, norm(U));
  const Mat22 a = fd_hessian(fn, U, h, dom), b = fd_hessian(fn, U, h / 2, dom);
  Mat22 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = (4 * b(i, j) - a(i, j)) / 3;
  return r;
}

// Every closed-form derivative against central differences.
void check_against_fd(const System& sys, const std::vector<Vec2>& pts, double tol) {
  const Box dom = sys.box();
  for (Vec2 U : pts) {
    CAPTURE(sys.label());
    CAPTURE(U.x);
    CAPTURE(U.y);
    const Point p = sys.eval(U);
    const Mat22 J = fd_jacobian([&](Vec2 x) { return sys.flux(x); }, U, 0.0, &dom);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(J(i, j) - p.Df(i, j)) < tol * (1 + std::abs(p.Df(i, j))));
    for (int a = 0; a < 2; ++a) {
      const Mat22 H = hessian_oracle([&](Vec2 x) { return a == 0 ? sys.flux(x).x : sys.flux(x).y; }, U, &dom);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          CHECK(std::abs(H(i, j) - p.D2f[a](i, j)) < tol * (1 + std::abs(p.D2f[a](i, j))));
    }
    const Vec2 ge = fd_gradient([&](Vec2 x) { return sys.eta(x); }, U, 0.0, &dom);
    const Vec2 gq = fd_gradient([&](Vec2 x) { return sys.q(x); }, U, 0.0, &dom);
    CHECK(norm(ge - p.grad_eta) < tol * (1 + norm(p.grad_eta)));
    CHECK(norm(gq - p.grad_q) < tol * (1 + norm(p.grad_q)));
    const Mat22 He = hessian_oracle([&](Vec2 x) { return sys.eta(x); }, U, &dom);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(std::abs(He(i, j) - p.hess_eta(i, j)) < tol * (1 + std::abs(p.hess_eta(i, j))));
    CHECK(norm(compatibility_residual(sys, U)) < 1e-8 * (1 + norm(p.grad_q)));
    CHECK(p.hess_eta(0, 0) > 0);
    CHECK(det(p.hess_eta) > 0);
  }
}

}  // namespace

TEST_CASE("p-system exp entries") {
  const System sys = p_exp();
  const Vec2 U{0.3, -1.2};
  CHECK(sys.eta(U) == doctest::Approx(0.5 * 1.44 + std::exp(0.3)));
  CHECK(sys.q(U) == doctest::Approx(-1.2 * -std::exp(0.3)));
  const Mat32 G = eval_G(sys, {0, 0});
  CHECK(G(0, 0) == 0.0);
  CHECK(G(0, 1) == 0.0);
  CHECK(G(1, 0) == 0.0);
  CHECK(G(1, 1) == doctest::Approx(-1.0));
  CHECK(G(2, 0) == doctest::Approx(1.0));
  CHECK(G(2, 1) == 0.0);
}

TEST_CASE("gamma law entropy") {
  const System sys = gamma_law(2.0);
  CHECK(sys.eta({2, 3}) == doctest::Approx(9.0 / 4.0 + 4.0));
  CHECK(sys.flux({2, 3}).y == doctest::Approx(4.5 + 4.0));
  CHECK(norm(compatibility_residual(sys, {2, 3})) < 1e-12);
  CHECK_THROWS_AS(sys.eval({0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(make_system(spec("gamma_law", {{"gamma", 1.0}})), ConfigError);
  CHECK_THROWS_AS(make_system(spec("gamma_law", {{"kappa", -1.0}})), ConfigError);
  CHECK_THROWS_AS(make_system(spec("nonsense")), ConfigError);
  CHECK_THROWS_AS(make_system(spec("p_system", {{"a", 1}, {"b", -1}}, "exp")), ConfigError);
  CHECK_THROWS_AS(make_system(spec("p_system", {}, "cubic")), ConfigError);
}

TEST_CASE("two Burgers entropy flux") {
  const System sys = two_burgers_10();
  // q = u1^3/3 + u2^3/3 + 5 u2^2
  CHECK(sys.q({1, 2}) == doctest::Approx(23.0));
  CHECK(sys.eta({1, 2}) == doctest::Approx(2.5));
  const Mat32 G = eval_G(sys, {0, 0});
  CHECK(G(0, 0) == 0.0);
  CHECK(G(1, 0) == 0.0);
  CHECK(G(2, 0) == 0.0);
}

TEST_CASE("closed forms agree with finite differences across the catalog") {
  const Box unit = box(-2, 2, -2, 2);
  check_against_fd(p_exp(), random_points(unit, 100, 1), 1e-6);
  check_against_fd(make_system(spec("p_system", {{"a", 1}, {"b", 1.4}}, "power")),
                   random_points(box(0.3, 3, -2, 2), 100, 2), 1e-6);
  check_against_fd(make_system(spec("p_system", {{"a", 1}, {"b", 2}, {"v0", 1}}, "shifted_power")),
                   random_points(box(-0.5, 2, -2, 2), 100, 3), 1e-6);
  check_against_fd(grad_flux_rich(), random_points(unit, 100, 4), 1e-6);
  check_against_fd(gamma_law(2.0), random_points(box(0.2, 5, -3, 3), 100, 5), 1e-6);
  check_against_fd(gamma_law(1.4), random_points(box(0.2, 5, -3, 3), 100, 6), 1e-6);
  check_against_fd(make_system(spec("isentropic_euler", {{"kappa", 1}, {"gamma", 1.6}, {"kappa2", 0.5}, {"gamma2", 3}})),
                   random_points(box(0.2, 5, -3, 3), 100, 7), 1e-6);
  check_against_fd(make_system(spec("shallow_water", {{"g", 9.81}})),
                   random_points(box(0.2, 5, -3, 3), 100, 8), 1e-6);
  check_against_fd(make_system(spec("two_burgers", {{"f1_a", 1}, {"f2_a", 2}, {"f2_k", 0.5}, {"h", 2}})),
                   random_points(unit, 100, 9), 1e-6);
}

TEST_CASE("tilt") {
  const System sys = p_exp();
  const System same = tilt(sys, {0, 0});
  const System t = tilt(sys, {0, -2});
  for (Vec2 U : random_points(box(-2, 2, -2, 2), 50, 12)) {
    CHECK(same.eta(U) == sys.eta(U));
    CHECK(same.q(U) == sys.q(U));
    const double v = U.x, u = U.y;
    CHECK(t.eta(U) == doctest::Approx(0.5 * u * u + std::exp(v) - 2 * u));
    // q~ = u p(v) - 2 p(v) = -(u - 2) e^v, not the caption's u(e^v - 2)
    CHECK(t.q(U) == doctest::Approx(-(u - 2) * std::exp(v)));
    CHECK(norm(compatibility_residual(t, U)) < 1e-8);
    const Mat32 G = eval_G(sys, U), Gt = eval_G(t, U);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(G(r, c) == Gt(r, c));
  }
  // the figure's tilt, c = (-2, 0)
  const System f8 = tilt(sys, {-2, 0});
  CHECK(f8.eta({0.5, 1}) == doctest::Approx(0.5 + std::exp(0.5) - 1.0));
  CHECK(f8.q({0.5, 1}) == doctest::Approx(-1.0 * (std::exp(0.5) - 2)));
  // composition is additive
  const System tt = tilt(tilt(sys, {1, 2}), {-3, 0.5});
  const System direct = tilt(sys, {-2, 2.5});
  CHECK(tt.eta({0.1, 0.2}) == doctest::Approx(direct.eta({0.1, 0.2})));
  CHECK(tt.q({0.1, 0.2}) == doctest::Approx(direct.q({0.1, 0.2})));
}

TEST_CASE("compatibility residual detects a perturbed entropy flux") {
  const System base = p_exp();
  System bad("perturbed",
             [base](const Jet& a, const Jet& b) {
               Triple t = base.jets(a, b);
               t.q = t.q + a;
               return t;
             },
             Box{}, base.spec());
  const Vec2 r = compatibility_residual(bad, {0.4, -0.3});
  CHECK(r.x == doctest::Approx(1.0));
  CHECK(std::abs(r.y) < 1e-12);
}

TEST_CASE("domain override") {
  SystemSpec s = spec("p_system", {{"a", 1}, {"b", 1}}, "exp");
  s.domain = box(-1, 1, -1, 1);
  const System sys = make_system(s);
  CHECK(sys.contains({0, 0}));
  CHECK_FALSE(sys.contains({1, 0}));
  CHECK_THROWS_AS(eval_G(sys, {1, 0}), DomainError);
}
