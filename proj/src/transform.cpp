#include "hyperlaw/transform.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "hyperlaw/errors.hpp"

namespace hyperlaw {

Vec2 map_state(Vec2 U) { return {1.0 / U.x, U.y / U.x}; }

namespace {

Transformed transform(const System& src, double eps, double M, const std::string& direction) {
  if (!(eps > 0) || !std::isfinite(eps))
    throw DomainError(direction + ": strip lower bound must be positive (u1 = 0 is excluded)");
  if (M > 0 && !(M > eps)) throw DomainError(direction + ": strip requires eps < M");

  Model model = [src](const Jet& v1, const Jet& v2) {
    const Jet u1 = reciprocal(v1);
    const Jet u2 = v2 * u1;
    const Triple s = src.jets(u1, u2);
    const Jet eta = s.eta * v1;
    return Triple{-(s.f1 * v1), s.f2 - s.f1 * v2, eta, s.q - s.f1 * eta};
  };

  Box box;
  box.lo.x = M > 0 ? 1.0 / M : 0.0;
  box.hi.x = 1.0 / eps;

  SystemSpec spec;
  spec.kind = "transformed";
  spec.source = std::make_shared<SystemSpec>(src.spec());
  spec.direction = direction;
  spec.strip_eps = eps;
  spec.strip_max = M;

  const std::array<std::string, 2> names =
      direction == "to-lagrangian" ? std::array<std::string, 2>{"v1", "v2"}
                                   : std::array<std::string, 2>{"u1", "u2"};
  System target(direction + "(" + src.label() + ")", model, box, spec, names);
  const double lo = eps, hi = M > 0 ? M : std::numeric_limits<double>::infinity();
  target.set_predicate([src, lo, hi](Vec2 V) {
    const Vec2 U = map_state(V);
    return U.x >= lo && U.x <= hi && src.contains(U);
  });

  TransformRecord rec{direction, src.spec(), spec, eps, M};
  return {target, rec};
}

}  // namespace

Transformed to_lagrangian(const System& sys, double eps, double M) {
  return transform(sys, eps, M, "to-lagrangian");
}

Transformed to_eulerian(const System& sys, double eps, double M) {
  return transform(sys, eps, M, "to-eulerian");
}

ShockCorrespondence shock_correspondence_check(const System& source, const System& target,
                                               const TransformRecord& record, Vec2 UL, Vec2 UR,
                                               double sigma, double tol) {
  const double hi = record.M > 0 ? record.M : std::numeric_limits<double>::infinity();
  for (Vec2 U : {UL, UR})
    if (!(U.x >= record.eps && U.x <= hi))
      throw DomainError("shock_correspondence_check: state outside the validity strip");

  ShockCorrespondence out;
  out.sigma_source = sigma;
  const Point pL = source.eval(UL), pR = source.eval(UR);
  out.source_rh = norm(sigma * (UL - UR) - (pL.f - pR.f));

  out.VL = map_state(UL);
  out.VR = map_state(UR);
  const Point tL = target.eval(out.VL), tR = target.eval(out.VR);
  const Vec2 dV = out.VL - out.VR, dF = tL.f - tR.f;
  const double dd = dot(dV, dV);
  if (dd == 0.0) {
    // Trivial shock: any speed works.
    out.sigma_target = 0.0;
    out.target_rh = norm(dF);
  } else {
    out.sigma_target = dot(dV, dF) / dd;
    out.target_rh = norm(out.sigma_target * dV - dF);
  }

  out.dissipation_source = (pL.q - pR.q) - sigma * (pL.eta - pR.eta);
  out.dissipation_target = (tL.q - tR.q) - out.sigma_target * (tL.eta - tR.eta);
  const bool both_tiny = std::abs(out.dissipation_source) < 1e-12 &&
                         std::abs(out.dissipation_target) < 1e-12;
  out.sign_preserved = both_tiny || (out.dissipation_source > 0) == (out.dissipation_target > 0);
  out.ok = out.target_rh < tol && out.sign_preserved;
  return out;
}

}  // namespace hyperlaw
