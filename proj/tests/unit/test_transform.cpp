#include <doctest.h>

#include <random>

#include "hyperlaw/errors.hpp"
#include "hyperlaw/hypothesis.hpp"
#include "hyperlaw/shock_curves.hpp"
#include "hyperlaw/transform.hpp"
#include "helpers.hpp"

using namespace hyperlaw;
using namespace testing_helpers;

namespace {

bool positive_definite(const Mat22& h) { return h(0, 0) > 0 && det(h) > 0; }

}  // namespace

TEST_CASE("Lagrangian image of isentropic Euler is a p-system") {
  for (double g : {1.4, 2.0, 3.0}) {
    const double kappa = 0.7;
    const System src = make_system(spec("gamma_law", {{"kappa", kappa}, {"gamma", g}}));
    const Transformed t = to_lagrangian(src, 0.1, 10);
    CHECK(t.record.direction == "to-lagrangian");
    CHECK(t.system.spec().kind == "transformed");
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> rho(0.1, 10), vel(-3, 3);
    for (int k = 0; k < 200; ++k) {
      const Vec2 V{1.0 / rho(rng), vel(rng)};
      const Point p = t.system.eval(V);
      const double P = kappa * std::pow(1.0 / V.x, g);
      CHECK(p.f.x == doctest::Approx(-V.y).epsilon(1e-13));
      CHECK(p.f.y == doctest::Approx(P).epsilon(1e-12));
      // eta^ = v2^2/2 + S(1/v1) v1 with S = kappa rho^g / (g - 1)
      const double S = kappa * std::pow(1.0 / V.x, g) / (g - 1);
      CHECK(p.eta == doctest::Approx(0.5 * V.y * V.y + S * V.x).epsilon(1e-12));
      CHECK(norm(compatibility_residual(t.system, V)) < 1e-8);
    }
  }
}

TEST_CASE("round trip through both directions") {
  const System src = gamma_law(2.0);
  const Transformed L = to_lagrangian(src, 0.2, 5);
  const Transformed E = to_eulerian(L.system, 0.2, 5);
  CHECK(E.record.direction == "to-eulerian");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rho(0.2, 5), m(-3, 3);
  for (int k = 0; k < 100; ++k) {
    const Vec2 U{rho(rng), m(rng)};
    const Vec2 back = map_state(map_state(U));
    CHECK(norm(back - U) <= 1e-12 * std::max(1.0, norm(U)));
    const Point a = src.eval(U), b = E.system.eval(U);
    CHECK(norm(a.f - b.f) <= 1e-9 * std::max(1.0, norm(a.f)));
    CHECK(std::abs(a.eta - b.eta) <= 1e-9 * std::max(1.0, std::abs(a.eta)));
    CHECK(std::abs(a.q - b.q) <= 1e-9 * std::max(1.0, std::abs(a.q)));
  }
}

TEST_CASE("strip contract") {
  const System src = gamma_law(2.0);
  CHECK_THROWS_AS(to_lagrangian(src, 0.0), DomainError);
  CHECK_THROWS_AS(to_lagrangian(src, -1.0), DomainError);
  CHECK_THROWS_AS(to_lagrangian(src, 2.0, 1.0), DomainError);
  const Transformed t = to_lagrangian(src, 0.5, 4);
  CHECK(t.system.contains(map_state({1.0, 0.2})));
  CHECK_FALSE(t.system.contains(map_state({0.4, 0.2})));
  CHECK_FALSE(t.system.contains(map_state({4.5, 0.2})));
  CHECK_THROWS_AS(shock_correspondence_check(src, t.system, t.record, {0.4, 0}, {1, 0}, 0.0),
                  DomainError);
}

TEST_CASE("shocks map to shocks with the same dissipation sign") {
  for (double g : {2.0, 3.0}) {
    const System src = gamma_law(g);
    const Transformed t = to_lagrangian(src, 0.1, 20);
    int checked = 0;
    for (Vec2 base : {Vec2{1, 0}, Vec2{2, 1}, Vec2{0.5, -0.4}})
      for (int k = 1; k <= 2; ++k) {
        const ShockCurve c = trace_hugoniot(src, base, k, -2, 2, 0.05);
        for (size_t i = 0; i < c.samples.size(); i += 3) {
          const auto& s = c.samples[i];
          if (s.s == 0.0 || s.U.x < 0.1 || s.U.x > 20) continue;
          const auto r = shock_correspondence_check(src, t.system, t.record, base, s.U, s.sigma);
          CHECK(r.ok);
          CHECK(r.target_rh < 1e-6);
          CHECK(r.sign_preserved);
          ++checked;
        }
      }
    CHECK(checked >= 100);
  }
  SUBCASE("trivial shock") {
    const System src = gamma_law(2.0);
    const Transformed t = to_lagrangian(src, 0.1);
    const auto r = shock_correspondence_check(src, t.system, t.record, {1, 0.5}, {1, 0.5}, 3.7);
    CHECK(r.ok);
    CHECK(r.VL == r.VR);
    CHECK(r.target_rh == 0.0);
  }
}

TEST_CASE("convexity transfers in both directions") {
  // eta Hessian [[e^u1, -2], [-2, 1]]: convex exactly where e^u1 > 4. Only eta
  // matters here, so the flux and entropy flux are placeholders.
  Model model = [](const Jet& u1, const Jet& u2) {
    return Triple{u2, u1, exp(u1) + 0.5 * u2 * u2 - 2.0 * u1 * u2, Jet::constant(0.0)};
  };
  const System src("nonconvex", model, Box{}, spec("custom"));
  const Transformed t = to_lagrangian(src, 0.2, 5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u1(0.2, 5), u2(-3, 3);
  int convex = 0, nonconvex = 0;
  for (int k = 0; k < 1000; ++k) {
    const Vec2 U{u1(rng), u2(rng)};
    const bool a = positive_definite(src.eval(U).hess_eta);
    const bool b = positive_definite(t.system.eval(map_state(U)).hess_eta);
    CHECK(a == b);
    (a ? convex : nonconvex)++;
  }
  CHECK(convex > 100);
  CHECK(nonconvex > 100);
}

TEST_CASE("Lagrangian gamma law satisfies the first hypothesis set on the strip") {
  const System lag = to_lagrangian(gamma_law(2.0), 0.2, 5).system;
  Box region;
  region.lo = {0.25, -2};
  region.hi = {4.5, 2};
  HypothesisOptions opt;
  opt.level.window = region;
  const auto r = hypothesis_report(lag, region, {{0, 0}, {-1, 0.5}}, {3, 5}, opt);
  for (int i = 0; i < 4; ++i) {
    CAPTURE(r.h1[i].item);
    CAPTURE(r.h1[i].detail);
    CHECK(r.h1[i].status == Verdict::verified);
  }
  CHECK(r.sector.found);
}
