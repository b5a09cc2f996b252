#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperlaw/characteristic.hpp"
#include "hyperlaw/systems.hpp"

namespace hyperlaw {

struct LevelSample {
  double t = 0;  // arclength
  Vec2 U;
  Vec2 tangent;  // counterclockwise around {eta < C}
  Vec2 normal;   // outward unit normal, grad eta / |grad eta|
};

struct LevelCurve {
  double C = 0;
  Vec2 tilt;
  std::vector<LevelSample> samples;
  bool closed = false;
  bool clipped = false;  // open curve cut at the window or domain boundary
  Box window;
  Vec2 seed_min;  // lowest point of eta found in the window
  double eta_min = 0;
};

struct LevelOptions {
  Box window = default_window();
  std::optional<Vec2> seed;
  double max_turn_deg = 1.0;
  double max_step = 0.05;
  double tol = 1e-11;
  size_t max_samples = 500000;

  static Box default_window() {
    Box b;
    b.lo = {-10, -10};
    b.hi = {10, 10};
    return b;
  }
};

// Minimizer of eta over the window (damped Newton with backtracking, kept
// inside the window). Returns the point and its value.
std::pair<Vec2, double> minimize_eta(const System& sys, const Box& window);

// Traces {eta = C} for the (already tilted) system.
LevelCurve trace_level_set(const System& sys, double C, const LevelOptions& opt = {});

// Newton projection onto {eta = C} along the gradient.
std::optional<Vec2> project_to_level(const System& sys, Vec2 U, double C, double tol = 1e-12);

enum class CriticalKind { max, min, degenerate };
const char* to_string(CriticalKind k);

struct CriticalPoint {
  Vec2 U;
  double t = 0;  // arclength position on the curve
  double value = 0;
  CriticalKind kind = CriticalKind::degenerate;
  double second_derivative = 0;  // d^2 q / dt^2 along the curve
  double derivative = 0;         // residual of dq/dt at U
  double lagrange_residual = 0;  // min_i |unit(grad eta) x l_i|
  int lagrange_family = 0;       // which l_i aligns (1 or 2), 0 if no frame
};

struct ExtremaReport {
  std::vector<CriticalPoint> points;
  bool plateau = false;  // dq/dt ~ 0 on a stretch; classification withheld there
  std::optional<Vec2> plateau_at;
};

ExtremaReport qtilde_extrema(const System& sys, const LevelCurve& curve, double tol = 1e-10);

// Arc labels I..IV as 1..4.
// Points of the curve where q~ = K: sign changes refined by bisection with
// projection, plus extrema whose value is within vtol of K (vtol < 0 selects
// 1e-12 max(1, |K|)).
std::vector<Vec2> qtilde_level_points(const System& sys, const LevelCurve& curve, double K,
                                      const ExtremaReport* extrema = nullptr, double vtol = -1);

struct LevelDecomposition {
  std::vector<int> labels;  // per sample
  struct Run {
    size_t first, last;  // inclusive; first > last means it wraps around
  };
  std::array<std::vector<Run>, 4> arcs;
  Vec2 w1, w2;
  std::string rule = "canonical";  // sign pattern of nu in the (w1, w2) basis
  int boundary_samples = 0;         // zero coefficient, reassigned cyclically
  struct Boundary {
    Vec2 U;
    double value;  // q~ there
    int before, after;
  };
  std::vector<Boundary> boundaries;
  std::array<std::optional<std::pair<double, double>>, 4> images;  // q~ ranges
};

LevelDecomposition decompose(const System& sys, const LevelCurve& curve, Vec2 w1, Vec2 w2,
                             const ExtremaReport* extrema = nullptr);

// Largest overlap length between q~ images of adjacent arcs (I-II, II-III,
// III-IV, IV-I). Zero when adjacent arcs only share their boundary value.
double adjacent_overlap(const LevelDecomposition& d);

// Minimum over the curve of the turning cross product t_i x t_{i+1}.
double min_turning(const LevelCurve& curve);

}  // namespace hyperlaw
