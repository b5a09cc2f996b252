#include <doctest.h>

#include <random>

#include "hyperlaw/algebra.hpp"
#include "hyperlaw/errors.hpp"
#include "helpers.hpp"

using namespace hyperlaw;
using namespace testing_helpers;

namespace {

Mat32 rows(Vec2 a, Vec2 b, Vec2 c) {
  Mat32 m;
  m(0, 0) = a.x; m(0, 1) = a.y;
  m(1, 0) = b.x; m(1, 1) = b.y;
  m(2, 0) = c.x; m(2, 1) = c.y;
  return m;
}

}  // namespace

TEST_CASE("subdet picks the named rows in order") {
  const Mat32 m = rows({1, 0}, {0, 1}, {5, 5});
  CHECK(subdet(m, 1, 2) == doctest::Approx(1.0));
  CHECK(subdet(m, 1, 3) == doctest::Approx(5.0));
  CHECK(subdet(m, 2, 1) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(subdet(m, 1, 1), ArgumentError);
  CHECK_THROWS_AS(subdet(m, 0, 2), ArgumentError);
  CHECK_THROWS_AS(subdet(m, 2, 4), ArgumentError);
}

TEST_CASE("subdet(1,2) vanishes on a p-system shock pair") {
  // p = -e^v, (v,u)_L = (0,0), v_R = 1: sigma^2 = e - 1, u_R = -sigma.
  const System sys = p_exp();
  const double sigma = std::sqrt(std::exp(1.0) - 1.0);
  const Mat32 d = eval_G(sys, {0, 0}) - eval_G(sys, {1, -sigma});
  CHECK(std::abs(subdet(d, 1, 2)) < 1e-10);
  CHECK(std::abs(subdet(d, 1, 3)) > 1e-3);
}

TEST_CASE("subdet is antisymmetric") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int k = 0; k < 200; ++k) {
    const Mat32 m = rows({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)});
    for (auto [r, s] : {std::pair{1, 2}, {1, 3}, {2, 3}})
      CHECK(subdet(m, r, s) == doctest::Approx(-subdet(m, s, r)));
  }
}

TEST_CASE("rank_one_residual") {
  CHECK(rank_one_residual(outer({1, 2, 3}, {4, 5})) < 1e-12);
  CHECK(rank_one_residual(Mat32{}) == 0.0);
  CHECK(rank_one_residual(rows({1, 0}, {0, 1}, {0, 0})) == doctest::Approx(1.0));
  // singular values of rows (3,0),(0,4),(0,0) are 4 and 3
  CHECK(rank_one_residual(rows({3, 0}, {0, 4}, {0, 0})) == doctest::Approx(3.0));

  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const Mat32 m = outer({g(rng), g(rng), g(rng)}, {g(rng), g(rng)});
    worst = std::max(worst, rank_one_residual(m) / std::max(1.0, frobenius(m)));
  }
  CHECK(worst < 1e-12);

  const Mat32 m = rows({1, 2}, {-3, 0.5}, {2, 7});
  CHECK(rank_one_residual(-2.5 * m) == doctest::Approx(2.5 * rank_one_residual(m)));
}

TEST_CASE("finite differences") {
  auto sq = [](Vec2 u) { return u.x * u.x; };
  const Vec2 g = fd_gradient(sq, {3, 7}, 1e-5);
  CHECK(std::abs(g.x - 6) < 1e-8);
  CHECK(std::abs(g.y) < 1e-8);

  auto c = [](Vec2) { return 4.2; };
  CHECK(norm(fd_gradient(c, {1, 2})) < 1e-10);
  const Mat22 hc = fd_hessian(c, {1, 2});
  CHECK(std::abs(hc(0, 0)) + std::abs(hc(0, 1)) + std::abs(hc(1, 1)) < 1e-10);

  // quadratic polynomials are exact
  auto poly = [](Vec2 u) { return 3 * u.x * u.x - 2 * u.x * u.y + 0.5 * u.y * u.y + u.x - 4; };
  const Vec2 pg = fd_gradient(poly, {1.5, -2}, 1e-4);
  CHECK(std::abs(pg.x - (6 * 1.5 + 4 + 1)) < 1e-8);
  CHECK(std::abs(pg.y - (-3 - 2)) < 1e-8);
  const Mat22 ph = fd_hessian(poly, {1.5, -2}, 1e-4);
  CHECK(std::abs(ph(0, 0) - 6) < 1e-6);
  CHECK(std::abs(ph(0, 1) + 2) < 1e-6);
  CHECK(std::abs(ph(1, 1) - 1) < 1e-6);
}

TEST_CASE("finite-difference Hessian of the gamma-law entropy") {
  const System sys = gamma_law(2.0);
  const Box dom = sys.box();
  const Mat22 H = fd_hessian([&](Vec2 u) { return sys.eta(u); }, {1, 0}, 0.0, &dom);
  // eta = m^2/(2 rho) + rho^2 -> [[2, 0], [0, 1]] at (1, 0)
  CHECK(std::abs(H(0, 0) - 2) < 1e-6);
  CHECK(std::abs(H(0, 1)) < 1e-6);
  CHECK(std::abs(H(1, 1) - 1) < 1e-6);
  CHECK_THROWS_AS(fd_gradient([&](Vec2 u) { return sys.eta(u); }, {1.5e-3, 0}, 1e-3, &dom),
                  DomainError);
}
