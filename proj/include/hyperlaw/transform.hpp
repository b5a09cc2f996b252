#pragma once

#include <string>

#include "hyperlaw/systems.hpp"

namespace hyperlaw {

// Eulerian <-> Lagrangian change of variables for 2x2 systems.
// The state map (u1, u2) -> (1/u1, u2/u1) is its own inverse, and so is the
// flux/entropy recomposition, so both directions share one implementation.
struct TransformRecord {
  std::string direction;  // "to-lagrangian" | "to-eulerian"
  SystemSpec source_spec;
  SystemSpec target_spec;
  double eps = 0, M = 0;  // validity strip eps <= source u1 <= M (M <= 0: unbounded)
};

struct Transformed {
  System system;
  TransformRecord record;
};

Transformed to_lagrangian(const System& sys, double eps, double M = 0.0);
Transformed to_eulerian(const System& sys, double eps, double M = 0.0);

// (u1, u2) -> (1/u1, u2/u1)
Vec2 map_state(Vec2 U);

struct ShockCorrespondence {
  bool ok = false;
  Vec2 VL, VR;
  double sigma_source = 0, sigma_target = 0;
  double source_rh = 0, target_rh = 0;
  double dissipation_source = 0, dissipation_target = 0;
  bool sign_preserved = true;
};

// Maps (UL, UR, sigma) to target variables, fits the target speed from the
// target jump condition and checks it; also compares entropy dissipation.
ShockCorrespondence shock_correspondence_check(const System& source, const System& target,
                                               const TransformRecord& record, Vec2 UL, Vec2 UR,
                                               double sigma, double tol = 1e-6);

}  // namespace hyperlaw
