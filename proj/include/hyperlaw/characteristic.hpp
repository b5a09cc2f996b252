#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperlaw/systems.hpp"

namespace hyperlaw {

// normalized: |r_i| = 1 and r_i . grad(lambda_i) > 0 (falls back to the
//             previous frame, then to catalog, where that product vanishes).
// catalog:    fixed sign, second component of r_i negative (first positive
//             when the second is zero).
// In both cases |l_i| = 1 and l_i . r_i > 0.
enum class Orientation { normalized, catalog };

struct EigenFrame {
  Vec2 U;
  std::array<double, 2> lambda{};
  std::array<Vec2, 2> r, l;
  std::array<double, 2> gnl{};  // r_i . grad(lambda_i) in this frame
  std::array<bool, 2> tie_break{};  // orientation not fixed by gnl
};

// Eigenvalue/eigenvector data for a 2x2 matrix with catalog orientation.
// Throws HyperbolicityError(U) unless the eigenvalues are real and distinct.
EigenFrame eigen_decompose(const Mat22& A, Vec2 U = {});

// Gradient of lambda_i at p for the eigenpair (r_i, l_i) of p.Df.
Vec2 grad_lambda(const Point& p, const EigenFrame& fr, int i);

EigenFrame eigenframe(const Point& p, Orientation o = Orientation::normalized,
                      const EigenFrame* previous = nullptr, double gnl_tol = 1e-12);
EigenFrame eigenframe(const System& sys, Vec2 U, Orientation o = Orientation::normalized,
                      const EigenFrame* previous = nullptr);

// (r_1 . grad lambda_1, r_2 . grad lambda_2)
std::array<double, 2> genuine_nonlinearity(const System& sys, Vec2 U,
                                           Orientation o = Orientation::normalized);
// (l_2 D2f(r_1, r_1), l_1 D2f(r_2, r_2))
std::array<double, 2> smoller_johnson(const System& sys, Vec2 U,
                                      Orientation o = Orientation::normalized);
std::array<double, 2> smoller_johnson(const Point& p, const EigenFrame& fr);
// kappa_i = l_j D2f(r_i, r_i) / (lambda_i - lambda_j)
std::array<double, 2> rarefaction_curvature(const System& sys, Vec2 U,
                                            Orientation o = Orientation::normalized);

// Closed forms for the gradient-flux family f = (eta_u, eta_v), state (v, u).
// r1, r2 here are attached to the eigenvalue they belong to:
// r1 ~ (s, -1) for lambda1 = eta_vu - sqrt(eta_uu eta_vv), r2 ~ (-s, -1),
// s = sqrt(eta_uu / eta_vv).
struct GradientFluxClosedForm {
  std::array<double, 2> lambda{};
  std::array<Vec2, 2> r;      // unit, catalog orientation
  double G_plus = 0, G_minus = 0;  // genuine nonlinearity expressions
  double F_plus = 0, F_minus = 0;  // Smoller-Johnson expressions
};
GradientFluxClosedForm gradient_flux_closed_form(const Point& p);

// Evenly spaced grid over a bounded box, m x m points, cell-centred.
std::vector<Vec2> sample_grid(const Box& region, int m);

struct SectorResult {
  bool found = false;
  Vec2 w1, w2;
  int samples = 0;
  // When not found: the state at which a feasible cone became empty, the
  // vector set that emptied it.
  std::optional<Vec2> witness;
  int empty_cone = 0;  // 1 or 2
  std::string reason;
  std::optional<Vec2> hyperbolicity_failure;
};

// Looks for fixed w1, w2 with r1.w1 < 0, r1.w2 > 0, r2.w1 > 0, r2.w2 > 0 at
// every sample (normalized orientation). The feasible set of each w is an
// arc of the circle; arcs are intersected exactly over all samples.
SectorResult sector_search(const System& sys, const Box& region, int n_samples = 400);

// True when the four strict inequalities hold at every sample.
bool sector_holds(const System& sys, const std::vector<Vec2>& pts, Vec2 w1, Vec2 w2,
                  Vec2* witness = nullptr);

}  // namespace hyperlaw
