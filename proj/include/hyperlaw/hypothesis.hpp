#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyperlaw/characteristic.hpp"
#include "hyperlaw/level_sets.hpp"
#include "hyperlaw/shock_curves.hpp"

namespace hyperlaw {

enum class Verdict { verified, failed, indeterminate, not_checked };

// "verified-on-samples", "failed-at-point", "indeterminate", "not-checked"
const char* to_string(Verdict v);

struct ItemVerdict {
  std::string item;  // e.g. "H1(iii)"
  Verdict status = Verdict::not_checked;
  bool sampled_only = false;  // quantified over all tilts, checked on the grid
  std::optional<Vec2> witness;
  std::optional<Vec2> witness_tilt;
  std::optional<double> witness_level;
  std::string detail;
};

struct HypothesisOptions {
  int n_samples = 400;
  int shock_bases = 3;      // per axis, inside the region
  double shock_span = 2.0;  // arclength per branch
  LevelOptions level;
  static std::vector<Vec2> default_tilts();  // 5x5 lattice on [-3, 3]^2
};

struct HypothesisReport {
  std::string system;
  Box region;
  std::vector<Vec2> tilts;
  std::vector<double> levels;
  std::array<ItemVerdict, 5> h1, h2;
  SectorResult sector;
  bool sj_flipped = false;
  int levels_traced = 0, levels_empty = 0, levels_clipped = 0;
  std::vector<std::string> recommendations;
};

// Scans an m x m grid and the segments between neighbours for a point where
// Df has no pair of real distinct eigenvalues.
std::optional<Vec2> hyperbolicity_witness(const System& sys, const Box& region, int m);

HypothesisReport hypothesis_report(const System& sys, const Box& region,
                                   const std::vector<Vec2>& tilts,
                                   const std::vector<double>& levels,
                                   const HypothesisOptions& opt = {});

}  // namespace hyperlaw
