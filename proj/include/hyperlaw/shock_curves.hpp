#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hyperlaw/characteristic.hpp"
#include "hyperlaw/systems.hpp"

namespace hyperlaw {

struct ShockSample {
  double s = 0;  // signed arclength in state space
  Vec2 U;
  double sigma = 0;
  double rh_residual = 0;
  double dissipation_direct = 0;  // q(S) - q(U0) - sigma (eta(S) - eta(U0))
  double dissipation_integral = std::numeric_limits<double>::quiet_NaN();
  double relative_entropy = 0;  // eta(U0 | S)
  Vec2 T;  // unit tangent dU/ds
  // continuation coordinates: U = U0 + r (cos phi, sin phi)
  std::array<double, 3> z{};
  std::array<double, 3> zt{};  // unit tangent in z, pointing to increasing s
};

struct ShockCurve {
  Vec2 U0;
  int family = 1;
  double lambda0 = 0;
  std::vector<ShockSample> samples;  // increasing s; includes s = 0
  size_t origin = 0;                 // index of the s = 0 sample
  bool truncated_negative = false, truncated_positive = false;
  // "minus_r_k": s > 0 leaves U0 along -r_k of the normalized frame.
  // "catalog": same with the catalog frame (used where GNL vanishes at U0).
  std::string orientation = "minus_r_k";
};

struct TraceOptions {
  double s_min = -5, s_max = 5;
  double step = 0.05;     // target state-space step
  double min_step = 1e-8;  // in continuation coordinates
  double tol = 1e-10;
};

ShockCurve trace_hugoniot(const System& sys, Vec2 U0, int family, const TraceOptions& opt = {});
ShockCurve trace_hugoniot(const System& sys, Vec2 U0, int family, double s_min, double s_max,
                          double step);

struct LiuLaxReport {
  // Direction of sigma on each branch: -1 decreasing, +1 increasing, 0 not monotone.
  int direction_negative = 0, direction_positive = 0;
  bool liu = false;
  struct Extremum {
    double s;
    Vec2 U;
    double sigma;
  };
  std::vector<Extremum> extrema;  // interior sigma extrema (Liu violations)
  bool lax_e = false;             // sigma in I[lambda_k(S), lambda_k(U0)] everywhere
  int lax_failures = 0;
  std::optional<Vec2> lax_witness;
  // +1: lambda_k(S) <= sigma <= lambda_k(U0) on the branch, -1 reversed, 0 mixed
  int lax_order_negative = 0, lax_order_positive = 0;
};

LiuLaxReport liu_lax_check(const System& sys, const ShockCurve& curve, double tol = 1e-10);

// Fills dissipation_integral = int_0^s sigma'(t) eta(U0 | S(t)) dt along the
// curve by adaptive Simpson between samples. The identity is
// dissipation_direct == dissipation_integral.
void dissipation_profile(const System& sys, ShockCurve& curve, double tol = 1e-12);
double dissipation_identity_residual(const ShockSample& s);

struct RankOneScan {
  double min_normalized = std::numeric_limits<double>::infinity();
  double witness_s = 0;
  Vec2 witness_U;
  double max_subdet12 = 0;
  int samples = 0;
};

// Over samples with s_lo <= |s| <= s_hi; s_lo must be positive.
RankOneScan rank_one_scan(const System& sys, const ShockCurve& curve, double s_lo = 0.1,
                          double s_hi = 5.0);

// U and sigma at parameter s by cubic Hermite interpolation between samples.
std::optional<Vec2> curve_point(const ShockCurve& curve, double s);

struct ContinuityProbe {
  double max_displacement = 0;
  double ratio = 0;  // displacement / delta
  double span_lo = 0, span_hi = 0;
  bool truncated = false;
};

ContinuityProbe curve_continuity_probe(const System& sys, Vec2 U0, int family, double delta,
                                       const TraceOptions& opt = {});

// Outermost crossing of {eta_level(S(s)) = C} on the branch sign(branch);
// bracketed on samples, refined by bisection on the continuation curve.
std::optional<ShockSample> last_exit(const System& sys, const System& level_sys,
                                     const ShockCurve& curve, double C, int branch,
                                     double tol = 1e-10);

// Ray from U0 through each sample meets no other sample (within tol).
bool star_shaped(const ShockCurve& curve, double tol = 1e-9);

}  // namespace hyperlaw
