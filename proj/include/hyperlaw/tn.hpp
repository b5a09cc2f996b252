#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperlaw/level_sets.hpp"
#include "hyperlaw/systems.hpp"

namespace hyperlaw {

using Row3 = std::array<double, 3>;

// X_i = P + C_1 + ... + C_{i-1} + kappa_i C_i with C_i = a_i (x) n_i.
struct TNConfig {
  Mat32 P;
  std::vector<Row3> a;
  std::vector<Vec2> n;  // unit, first nonzero component positive
  std::vector<double> kappa;
  std::vector<int> order;  // position k holds the index of the input matrix

  int N() const { return static_cast<int>(a.size()); }
  Mat32 C(int i) const { return outer(a[i], n[i]); }
  std::vector<Mat32> matrices() const;  // in parametrization order
  double closure() const;               // |sum C_i|_F
};

// Throws ArgumentError if N < 4, kappa_i <= 1 or the C_i do not close
// (|sum C_i| > 1e-10 times the largest |C_i|).
std::vector<Mat32> tn_synthesize(const Mat32& P, const std::vector<Row3>& a,
                                 const std::vector<Vec2>& n, const std::vector<double>& kappa);

struct SignTest {
  bool excluded = false;
  int witness_i = -1;               // 0-based
  std::array<int, 2> witness_rs{};  // 1-based rows
  double tolerance = 0;
  // Number of (i, rs) pairs whose set is single-signed, per row pair.
  std::map<std::string, int> exclusions;
  int inconclusive = 0;  // sets blocked only by near-zero entries
};

// Row pairs are visited in the order (1,3), (2,3), (1,2); the witness is the
// first single-signed set. Entries within tol * scale^2 of zero neither
// support nor block exclusion. Throws ArgumentError on duplicate matrices.
SignTest tn_sign_test(const std::array<Mat32, 4>& X, double rel_tol = 1e-9);

struct TNSolveOptions {
  int starts = 64;
  std::uint64_t seed = 0;
  double threshold = 1e-10;
  double rank_one_fail = 1e-8;
  double rank_one_warn = 1e-6;
};

struct TNSolveResult {
  bool success = false;
  double residual = 0;  // best, relative to the spread of the X_i
  double reconstruction_error = 0;
  TNConfig config;
  int starts_run = 0;
  bool near_rank_one = false;
  double min_pair_rank_one = 0;
};

// Multistart Levenberg-Marquardt over the directions n_i and kappa_i, with P
// and a_i eliminated by linear least squares. All six orders with X_1 first
// are tried. Throws StructuralError when a pair X_i - X_j is rank one.
TNSolveResult tn_solve(const std::array<Mat32, 4>& X, const TNSolveOptions& opt = {});

// Fresh solver state for a seed; exposed for the search drivers.
std::uint64_t splitmix64(std::uint64_t x);

struct TiltFit {
  bool degenerate = false;
  Vec2 c;
  double eta_level = 0;     // common value of eta~
  double eta_residual = 0;  // max deviation of eta~ from eta_level
  double q_level = 0;
  double q_residual = 0;  // max deviation of q~ from its mean
  Vec2 line_point, line_dir;  // when degenerate
};

// c with eta + c.U equal at all four states (least squares over the three
// differences). Degenerate when the differences have rank < 2.
TiltFit find_tilt(const System& sys, const std::array<Vec2, 4>& U);

enum class Strategy { reduced, random, local_descent };
const char* to_string(Strategy s);
Strategy parse_strategy(const std::string& s);

struct SearchOptions {
  Strategy strategy = Strategy::reduced;
  long budget = 10000;
  std::uint64_t seed = 1;
  std::vector<Vec2> tilts;     // empty: 5x5 lattice on [-3, 3]^2
  std::vector<double> levels;  // absolute levels; empty: offsets used
  std::vector<double> level_offsets = {0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5};
  int values_per_band = 9;  // odd, so the band midpoint is included
  Box region;  // random and local-descent sampling box (bounded)
  LevelOptions level;
  TNSolveOptions solver;
  bool timing = false;
};

struct Candidate {
  std::array<Vec2, 4> U;
  Vec2 c;
  double C = 0, K = 0;
};

struct SearchReport {
  std::string system;
  Strategy strategy = Strategy::reduced;
  std::uint64_t seed = 0;
  long budget = 0;
  long examined = 0;
  long sign_rejected = 0;
  long structural_rejected = 0;  // pairwise rank-one connections
  long degenerate = 0;           // collinear states in find_tilt
  long solver_attempts = 0;
  long passed = 0;  // sign test and solver threshold
  long near_rank_one = 0;
  std::map<std::string, long> excluded_by;
  double best_residual = INFINITY;
  std::optional<Candidate> best_candidate;
  std::optional<double> wall_ms;
  long curves = 0, empty_levels = 0;
};

SearchReport t4_search(const System& sys, const SearchOptions& opt);

// A constitutive surface built around a known T4: eta = |U|^2/2, the four
// states are the corners of a square on the circle |U| = rho, f interpolates
// the flux rows and q - q0 changes sign exactly at the corners. There is no
// conservation-law structure behind it.
struct PlantedT4 {
  System system;
  std::array<Mat32, 4> X;
  std::array<Vec2, 4> U;
  double level = 0;
  double q0 = 0;
};
PlantedT4 planted_t4(const SystemSpec& spec = {});

}  // namespace hyperlaw
