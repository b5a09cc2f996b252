#pragma once

#include <random>
#include <vector>

#include "hyperlaw/systems.hpp"

namespace testing_helpers {

using namespace hyperlaw;

inline SystemSpec spec(const std::string& kind, std::map<std::string, double> params = {},
                       const std::string& family = "") {
  SystemSpec s;
  s.kind = kind;
  s.family = family;
  s.params = std::move(params);
  return s;
}

inline System p_exp() { return make_system(spec("p_system", {{"a", 1}, {"b", 1}}, "exp")); }
inline System gamma_law(double gamma) {
  return make_system(spec("gamma_law", {{"kappa", 1}, {"gamma", gamma}}));
}
inline System grad_flux_rich() {
  return make_system(spec("gradient_flux", {{"a", 2},
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

inline std::vector<Vec2> random_points(Box b, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> x(b.lo.x, b.hi.x), y(b.lo.y, b.hi.y);
  std::vector<Vec2> out;
  for (int i = 0; i < n; ++i) {
    const double px = x(rng);
    out.push_back({px, y(rng)});
  }
  return out;
}

inline Box box(double x0, double x1, double y0, double y1) {
  Box b;
  b.lo = {x0, y0};
  b.hi = {x1, y1};
  return b;
}

}  // namespace testing_helpers
