#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperlaw/hypothesis.hpp"
#include "hyperlaw/level_sets.hpp"
#include "hyperlaw/shock_curves.hpp"
#include "hyperlaw/systems.hpp"
#include "hyperlaw/tn.hpp"
#include "hyperlaw/transform.hpp"

namespace hyperlaw::report {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

// Infinite box bounds and non-finite numbers become null.
json to_json(Vec2 v);
json to_json(const Box& b);
json to_json(const SystemSpec& s);
json to_json(const EigenFrame& f);
json to_json(const SectorResult& s);
json to_json(const ItemVerdict& v);
json to_json(const HypothesisReport& r);
json to_json(const Candidate& c);
json to_json(const SearchReport& r);
json to_json(const TransformRecord& r);
json to_json(const CriticalPoint& p);
json to_json(const LiuLaxReport& r);

Vec2 vec_from_json(const json& j, const std::string& what);
Box box_from_json(const json& j, const std::string& what);
SystemSpec spec_from_json(const json& j);

// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

// 17 significant digits.
std::string fmt(double x);

// Columns s, u1, u2, sigma, rh_residual, dissipation_direct, dissipation_integral.
std::string hugoniot_csv(const ShockCurve& c);

// Columns t, u1, u2, qtilde, arc. The arc column is empty without a decomposition.
std::string level_csv(const System& tilted, const LevelCurve& c,
                      const LevelDecomposition* d = nullptr);

struct ShockSummary {
  double min_dissipation_magnitude = 0;
  double max_identity_residual = 0;
  bool dissipation_negative = true;
};
ShockSummary shock_summary(const ShockCurve& c);

json hugoniot_json(const System& sys, const ShockCurve& c, const LiuLaxReport& ll);
json level_json(const System& tilted, const LevelCurve& c, const ExtremaReport& ext,
                const std::optional<LevelDecomposition>& d, const std::string& decomposition_note);

struct FigureData {
  LevelCurve curve;
  ExtremaReport extrema;
  std::vector<Vec2> marked;  // q~ = 0 on the curve
  struct Pair {
    Vec2 base;
    ShockCurve s1, s2;
  };
  std::vector<Pair> shocks;
  Box view;
};

FigureData figure8_data(const System& tilted, const System& untilted, double C,
                        const LevelOptions& lopt, double shock_span);
std::string figure8_svg(const FigureData& d);
json figure8_json(const FigureData& d);

struct HugoniotRequest {
  Vec2 base;
  int family = 1;
  double s_min = -5, s_max = 5, step = 0.05;
};

struct SearchRequest {
  Strategy strategy = Strategy::reduced;
  long budget = 10000;
  std::optional<std::uint64_t> seed;
  int values_per_band = 9;
  int starts = 64;
};

struct TransformRequest {
  std::string direction = "to-lagrangian";
  double eps = 0.1, max = 0;
};

struct OutputFlags {
  std::string dir = "out";
  bool csv = true, json = true, svg = true;
};

struct RunConfig {
  SystemSpec system;
  Box window;  // analysis window, inside the domain
  std::optional<Box> region;
  std::vector<Vec2> tilts;
  std::vector<double> levels;
  Vec2 tilt;              // levelset, figure8
  std::optional<double> level;
  int samples = 400;
  double shock_span = 1.0;  // figure8
  HugoniotRequest hugoniot;
  SearchRequest search;
  TransformRequest transform;
  OutputFlags output;
};

// Throws ConfigError on schema violations.
RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);

}  // namespace hyperlaw::report
