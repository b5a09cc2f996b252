#include "hyperlaw/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hyperlaw/errors.hpp"

namespace hyperlaw::report {

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

template <class T>
json opt(const std::optional<T>& v) {
  return v ? to_json(*v) : json(nullptr);
}

[[noreturn]] void bad(const std::string& what) { throw ConfigError("config: " + what); }

double number(const json& j, const std::string& what) {
  if (!j.is_number()) bad(what + " must be a number");
  return j.get<double>();
}

double bound(const json& j, double inf, const std::string& what) {
  return j.is_null() ? inf : number(j, what);
}

const char* arc_name(int label) {
  static const char* names[] = {"", "I", "II", "III", "IV"};
  return label >= 1 && label <= 4 ? names[label] : "";
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) bad("unknown key '" + it.key() + "' in " + what);
}

}  // namespace

json to_json(Vec2 v) { return json::array({num(v.x), num(v.y)}); }

json to_json(const Box& b) { return {{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}}; }

json to_json(const SystemSpec& s) {
  json j;
  j["kind"] = s.kind;
  if (!s.family.empty()) j["family"] = s.family;
  json p = json::object();
  for (const auto& [k, v] : s.params) p[k] = num(v);
  j["params"] = p;
  if (s.domain) j["domain"] = to_json(*s.domain);
  if (s.tilt.x != 0.0 || s.tilt.y != 0.0) j["tilt"] = to_json(s.tilt);
  if (s.kind == "transformed") {
    j["direction"] = s.direction;
    j["strip_eps"] = num(s.strip_eps);
    j["strip_max"] = num(s.strip_max);
    j["source"] = s.source ? to_json(*s.source) : json(nullptr);
  }
  return j;
}

json to_json(const EigenFrame& f) {
  return {{"U", to_json(f.U)},
          {"lambda", {num(f.lambda[0]), num(f.lambda[1])}},
          {"r", {to_json(f.r[0]), to_json(f.r[1])}},
          {"l", {to_json(f.l[0]), to_json(f.l[1])}},
          {"gnl", {num(f.gnl[0]), num(f.gnl[1])}}};
}

json to_json(const SectorResult& s) {
  json j{{"found", s.found}, {"samples", s.samples}};
  j["w1"] = s.found ? to_json(s.w1) : json(nullptr);
  j["w2"] = s.found ? to_json(s.w2) : json(nullptr);
  j["witness"] = opt(s.witness);
  j["empty_cone"] = s.empty_cone;
  j["reason"] = s.reason;
  j["hyperbolicity_failure"] = opt(s.hyperbolicity_failure);
  return j;
}

json to_json(const ItemVerdict& v) {
  return {{"item", v.item},
          {"status", to_string(v.status)},
          {"sampled_only", v.sampled_only},
          {"witness", opt(v.witness)},
          {"witness_tilt", opt(v.witness_tilt)},
          {"witness_level", v.witness_level ? num(*v.witness_level) : json(nullptr)},
          {"detail", v.detail}};
}

json to_json(const HypothesisReport& r) {
  json j{{"schema", schema_version}, {"kind", "hypothesis_report"}, {"system", r.system}};
  j["region"] = to_json(r.region);
  j["tilts"] = json::array();
  for (auto c : r.tilts) j["tilts"].push_back(to_json(c));
  j["levels"] = json::array();
  for (double C : r.levels) j["levels"].push_back(num(C));
  j["H1"] = json::array();
  j["H2"] = json::array();
  for (const auto& v : r.h1) j["H1"].push_back(to_json(v));
  for (const auto& v : r.h2) j["H2"].push_back(to_json(v));
  j["sector"] = to_json(r.sector);
  j["sj_flipped"] = r.sj_flipped;
  j["levels_traced"] = r.levels_traced;
  j["levels_empty"] = r.levels_empty;
  j["levels_clipped"] = r.levels_clipped;
  j["recommendations"] = r.recommendations;
  return j;
}

json to_json(const Candidate& c) {
  json U = json::array();
  for (auto u : c.U) U.push_back(to_json(u));
  return {{"U", U}, {"c", to_json(c.c)}, {"C", num(c.C)}, {"K", num(c.K)}};
}

json to_json(const SearchReport& r) {
  json j{{"schema", schema_version}, {"kind", "search_report"}, {"system", r.system}};
  j["strategy"] = to_string(r.strategy);
  j["seed"] = r.seed;
  j["budget"] = r.budget;
  j["examined"] = r.examined;
  j["sign_rejected"] = r.sign_rejected;
  j["structural_rejected"] = r.structural_rejected;
  j["degenerate"] = r.degenerate;
  j["solver_attempts"] = r.solver_attempts;
  j["passed"] = r.passed;
  j["near_rank_one"] = r.near_rank_one;
  json ex = json::object();
  for (const auto& [k, v] : r.excluded_by) ex[k] = v;
  j["excluded_by"] = ex;
  j["best_residual"] = num(r.best_residual);
  j["best_candidate"] = opt(r.best_candidate);
  j["wall_ms"] = r.wall_ms ? num(*r.wall_ms) : json(nullptr);
  j["curves"] = r.curves;
  j["empty_levels"] = r.empty_levels;
  return j;
}

json to_json(const TransformRecord& r) {
  return {{"schema", schema_version},
          {"kind", "transform_record"},
          {"direction", r.direction},
          {"strip_eps", num(r.eps)},
          {"strip_max", num(r.M)},
          {"source", to_json(r.source_spec)},
          {"target", to_json(r.target_spec)}};
}

json to_json(const CriticalPoint& p) {
  return {{"U", to_json(p.U)},
          {"t", num(p.t)},
          {"value", num(p.value)},
          {"kind", to_string(p.kind)},
          {"second_derivative", num(p.second_derivative)},
          {"derivative", num(p.derivative)},
          {"lagrange_residual", num(p.lagrange_residual)},
          {"lagrange_family", p.lagrange_family}};
}

json to_json(const LiuLaxReport& r) {
  json ext = json::array();
  for (const auto& e : r.extrema)
    ext.push_back({{"s", num(e.s)}, {"U", to_json(e.U)}, {"sigma", num(e.sigma)}});
  return {{"liu", r.liu},
          {"direction_negative", r.direction_negative},
          {"direction_positive", r.direction_positive},
          {"sigma_extrema", ext},
          {"lax_e", r.lax_e},
          {"lax_failures", r.lax_failures},
          {"lax_witness", opt(r.lax_witness)},
          {"lax_order_negative", r.lax_order_negative},
          {"lax_order_positive", r.lax_order_positive}};
}

Vec2 vec_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) bad(what + " must be a pair of numbers");
  return {number(j[0], what), number(j[1], what)};
}

Box box_from_json(const json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
    bad(what + " must be an object with lo and hi");
  check_keys(j, {"lo", "hi"}, what);
  const auto& lo = j["lo"];
  const auto& hi = j["hi"];
  if (!lo.is_array() || lo.size() != 2 || !hi.is_array() || hi.size() != 2)
    bad(what + ": lo and hi must be pairs");
  Box b;
  b.lo = {bound(lo[0], -INFINITY, what), bound(lo[1], -INFINITY, what)};
  b.hi = {bound(hi[0], INFINITY, what), bound(hi[1], INFINITY, what)};
  if (!(b.lo.x < b.hi.x) || !(b.lo.y < b.hi.y)) bad(what + " is empty");
  return b;
}

SystemSpec spec_from_json(const json& j) {
  if (!j.is_object()) bad("system must be an object");
  check_keys(j, {"kind", "family", "params", "domain", "tilt", "direction", "strip_eps",
                 "strip_max", "source"},
             "system");
  if (!j.contains("kind") || !j["kind"].is_string()) bad("system.kind must be a string");
  SystemSpec s;
  s.kind = j["kind"].get<std::string>();
  if (j.contains("family")) {
    if (!j["family"].is_string()) bad("system.family must be a string");
    s.family = j["family"].get<std::string>();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) bad("system.params must be an object");
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
      s.params[it.key()] = number(it.value(), "system.params." + it.key());
  }
  if (j.contains("domain")) s.domain = box_from_json(j["domain"], "system.domain");
  if (j.contains("tilt")) s.tilt = vec_from_json(j["tilt"], "system.tilt");
  if (s.kind == "transformed") {
    if (!j.contains("source")) bad("transformed system needs a source");
    s.source = std::make_shared<SystemSpec>(spec_from_json(j["source"]));
    if (!j.contains("direction") || !j["direction"].is_string())
      bad("transformed system needs a direction");
    s.direction = j["direction"].get<std::string>();
    s.strip_eps = j.contains("strip_eps") ? number(j["strip_eps"], "system.strip_eps") : 0.0;
    s.strip_max = j.contains("strip_max") ? number(j["strip_max"], "system.strip_max") : 0.0;
  }
  return s;
}

std::string dump(const json& j) {
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string hugoniot_csv(const ShockCurve& c) {
  std::string out = "s,u1,u2,sigma,rh_residual,dissipation_direct,dissipation_integral\n";
  for (const auto& s : c.samples) {
    out += fmt(s.s) + ',' + fmt(s.U.x) + ',' + fmt(s.U.y) + ',' + fmt(s.sigma) + ',' +
           fmt(s.rh_residual) + ',' + fmt(s.dissipation_direct) + ',' +
           fmt(s.dissipation_integral) + '\n';
  }
  return out;
}

std::string level_csv(const System& tilted, const LevelCurve& c, const LevelDecomposition* d) {
  std::string out = "t,u1,u2,qtilde,arc\n";
  for (size_t i = 0; i < c.samples.size(); ++i) {
    const auto& s = c.samples[i];
    out += fmt(s.t) + ',' + fmt(s.U.x) + ',' + fmt(s.U.y) + ',' + fmt(tilted.q(s.U)) + ',' +
           (d ? arc_name(d->labels[i]) : "") + '\n';
  }
  return out;
}

ShockSummary shock_summary(const ShockCurve& c) {
  ShockSummary s;
  s.min_dissipation_magnitude = INFINITY;
  for (const auto& p : c.samples) {
    if (p.s == 0.0) continue;
    s.max_identity_residual = std::max(s.max_identity_residual, dissipation_identity_residual(p));
    s.min_dissipation_magnitude = std::min(s.min_dissipation_magnitude, std::abs(p.dissipation_direct));
    if (p.s > 0 && !(p.dissipation_direct < 0)) s.dissipation_negative = false;
  }
  return s;
}

json hugoniot_json(const System& sys, const ShockCurve& c, const LiuLaxReport& ll) {
  const ShockSummary sm = shock_summary(c);
  json j{{"schema", schema_version}, {"kind", "hugoniot_summary"}, {"system", sys.label()}};
  j["base"] = to_json(c.U0);
  j["family"] = c.family;
  j["lambda0"] = num(c.lambda0);
  j["orientation"] = c.orientation;
  j["samples"] = c.samples.size();
  j["s_range"] = {num(c.samples.front().s), num(c.samples.back().s)};
  j["truncated"] = {c.truncated_negative, c.truncated_positive};
  j["liu_lax"] = to_json(ll);
  double rh = 0;
  for (const auto& p : c.samples) rh = std::max(rh, p.rh_residual);
  j["max_rh_residual"] = num(rh);
  j["dissipation"] = {{"negative_for_positive_s", sm.dissipation_negative},
                      {"min_magnitude", num(sm.min_dissipation_magnitude)},
                      {"max_identity_residual", num(sm.max_identity_residual)}};
  return j;
}

json level_json(const System& tilted, const LevelCurve& c, const ExtremaReport& ext,
                const std::optional<LevelDecomposition>& d, const std::string& decomposition_note) {
  json j{{"schema", schema_version}, {"kind", "levelset_report"}, {"system", tilted.label()}};
  j["tilt"] = to_json(c.tilt);
  j["level"] = num(c.C);
  j["closed"] = c.closed;
  j["clipped"] = c.clipped;
  j["window"] = to_json(c.window);
  j["samples"] = c.samples.size();
  j["eta_min"] = num(c.eta_min);
  j["minimizer"] = to_json(c.seed_min);
  double res = 0;
  for (const auto& s : c.samples) res = std::max(res, std::abs(tilted.eta(s.U) - c.C));
  j["max_level_residual"] = num(res);
  json pts = json::array();
  for (const auto& p : ext.points) pts.push_back(to_json(p));
  j["extrema"] = {{"count", ext.points.size()},
                  {"points", pts},
                  {"plateau", ext.plateau},
                  {"plateau_at", opt(ext.plateau_at)}};
  if (d) {
    json arcs = json::object();
    for (int a = 0; a < 4; ++a) {
      json runs = json::array();
      for (const auto& r : d->arcs[a]) runs.push_back({r.first, r.last});
      json img = d->images[a] ? json{num(d->images[a]->first), num(d->images[a]->second)}
                              : json(nullptr);
      arcs[arc_name(a + 1)] = {{"runs", runs}, {"image", img}};
    }
    json bnd = json::array();
    for (const auto& b : d->boundaries)
      bnd.push_back({{"U", to_json(b.U)},
                     {"value", num(b.value)},
                     {"from", arc_name(b.before)},
                     {"to", arc_name(b.after)}});
    j["decomposition"] = {{"w1", to_json(d->w1)},
                          {"w2", to_json(d->w2)},
                          {"rule", d->rule},
                          {"arcs", arcs},
                          {"boundaries", bnd},
                          {"boundary_samples", d->boundary_samples},
                          {"adjacent_overlap", num(adjacent_overlap(*d))}};
  } else {
    j["decomposition"] = nullptr;
  }
  j["decomposition_note"] = decomposition_note;
  return j;
}

FigureData figure8_data(const System& tilted, const System& untilted, double C,
                        const LevelOptions& lopt, double shock_span) {
  FigureData d;
  d.curve = trace_level_set(tilted, C, lopt);
  d.extrema = qtilde_extrema(tilted, d.curve);
  d.marked = qtilde_level_points(tilted, d.curve, 0.0, &d.extrema);
  std::sort(d.marked.begin(), d.marked.end(),
            [](Vec2 a, Vec2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  TraceOptions topt;
  topt.s_min = -shock_span;
  topt.s_max = shock_span;
  topt.step = 0.02;
  for (Vec2 U : d.marked)
    d.shocks.push_back({U, trace_hugoniot(untilted, U, 1, topt), trace_hugoniot(untilted, U, 2, topt)});
  Box v{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
  auto grow = [&](Vec2 U) {
    v.lo = {std::min(v.lo.x, U.x), std::min(v.lo.y, U.y)};
    v.hi = {std::max(v.hi.x, U.x), std::max(v.hi.y, U.y)};
  };
  for (const auto& s : d.curve.samples) grow(s.U);
  for (const auto& p : d.shocks) {
    for (const auto& s : p.s1.samples) grow(s.U);
    for (const auto& s : p.s2.samples) grow(s.U);
  }
  const Vec2 pad{0.05 * (v.hi.x - v.lo.x), 0.05 * (v.hi.y - v.lo.y)};
  v.lo -= pad;
  v.hi += pad;
  d.view = v;
  return d;
}

std::string figure8_svg(const FigureData& d) {
  const double W = 640, H = 640;
  const Box& v = d.view;
  auto px = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return std::string(buf);
  };
  auto X = [&](double x) { return px(W * (x - v.lo.x) / (v.hi.x - v.lo.x)); };
  auto Y = [&](double y) { return px(H * (v.hi.y - y) / (v.hi.y - v.lo.y)); };
  auto polyline = [&](const std::vector<Vec2>& pts, bool closed, const char* cls,
                      const char* stroke) {
    std::string s = std::string("<") + (closed ? "polygon" : "polyline") + " class=\"" + cls +
                    "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + X(pts[i].x) + ',' + Y(pts[i].y);
    return s + "\"/>\n";
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::vector<Vec2> pts;
  for (const auto& s : d.curve.samples) pts.push_back(s.U);
  os << polyline(pts, d.curve.closed, "level-set", "black");
  for (const auto& p : d.shocks) {
    for (const ShockCurve* c : {&p.s1, &p.s2}) {
      std::vector<Vec2> cp;
      for (const auto& s : c->samples) cp.push_back(s.U);
      os << polyline(cp, false, c->family == 1 ? "shock-s1" : "shock-s2",
                     c->family == 1 ? "#1f77b4" : "#d62728");
    }
  }
  for (const auto& cp : d.extrema.points)
    os << "<circle class=\"extremum\" cx=\"" << X(cp.U.x) << "\" cy=\"" << Y(cp.U.y)
       << "\" r=\"5\" fill=\"none\" stroke=\"black\"/>\n";
  for (size_t i = 0; i < d.marked.size(); ++i) {
    const Vec2 U = d.marked[i];
    os << "<circle class=\"marked\" cx=\"" << X(U.x) << "\" cy=\"" << Y(U.y)
       << "\" r=\"3\" fill=\"black\"/>\n";
    os << "<text x=\"" << X(U.x) << "\" y=\"" << Y(U.y) << "\" dx=\"6\" dy=\"-6\" font-size=\"12\">X"
       << i + 1 << "</text>\n";
  }
  os << "<text x=\"8\" y=\"16\" font-size=\"12\">level " << fmt(d.curve.C) << ", tilt ("
     << fmt(d.curve.tilt.x) << ", " << fmt(d.curve.tilt.y) << ")</text>\n";
  os << "</svg>\n";
  return os.str();
}

json figure8_json(const FigureData& d) {
  json j{{"schema", schema_version}, {"kind", "figure8_summary"}};
  j["level"] = num(d.curve.C);
  j["tilt"] = to_json(d.curve.tilt);
  j["closed"] = d.curve.closed;
  j["extrema"] = json::array();
  for (const auto& p : d.extrema.points) j["extrema"].push_back(to_json(p));
  j["marked"] = json::array();
  for (auto U : d.marked) j["marked"].push_back(to_json(U));
  j["shock_pairs"] = json::array();
  for (const auto& p : d.shocks)
    j["shock_pairs"].push_back({{"base", to_json(p.base)},
                                {"s1_samples", p.s1.samples.size()},
                                {"s2_samples", p.s2.samples.size()}});
  j["view"] = to_json(d.view);
  return j;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) bad("document must be an object");
  check_keys(j, {"schema", "system", "window", "region", "tilts", "levels", "tilt", "level",
                 "samples", "shock_span", "hugoniot", "search", "transform", "output"},
             "config");
  if (!j.contains("schema") || j["schema"] != schema_version) bad("schema must be 1");
  if (!j.contains("system")) bad("missing system");
  RunConfig c;
  c.system = spec_from_json(j["system"]);
  const System sys = make_system(c.system);
  c.window = j.contains("window") ? box_from_json(j["window"], "window")
                                  : sys.box().intersect(LevelOptions::default_window());
  if (!c.window.bounded()) bad("window must be bounded");
  if (!c.window.inside(sys.box())) bad("window must lie inside the system domain");
  if (j.contains("region")) {
    c.region = box_from_json(j["region"], "region");
    if (!c.region->bounded()) bad("region must be bounded");
  }
  if (j.contains("tilts")) {
    if (!j["tilts"].is_array() || j["tilts"].empty()) bad("tilts must be a nonempty array");
    for (const auto& t : j["tilts"]) c.tilts.push_back(vec_from_json(t, "tilts[]"));
  }
  if (j.contains("levels")) {
    if (!j["levels"].is_array() || j["levels"].empty()) bad("levels must be a nonempty array");
    for (const auto& l : j["levels"]) c.levels.push_back(number(l, "levels[]"));
  }
  if (j.contains("tilt")) c.tilt = vec_from_json(j["tilt"], "tilt");
  if (j.contains("level")) c.level = number(j["level"], "level");
  if (j.contains("samples")) {
    if (!j["samples"].is_number_integer() || j["samples"].get<long>() < 100)
      bad("samples must be an integer >= 100");
    c.samples = j["samples"].get<int>();
  }
  if (j.contains("shock_span")) {
    c.shock_span = number(j["shock_span"], "shock_span");
    if (!(c.shock_span > 0)) bad("shock_span must be positive");
  }
  if (j.contains("hugoniot")) {
    const auto& h = j["hugoniot"];
    if (!h.is_object()) bad("hugoniot must be an object");
    check_keys(h, {"base", "family", "s_min", "s_max", "step"}, "hugoniot");
    if (!h.contains("base")) bad("hugoniot.base is required");
    c.hugoniot.base = vec_from_json(h["base"], "hugoniot.base");
    if (h.contains("family")) {
      if (!h["family"].is_number_integer()) bad("hugoniot.family must be 1 or 2");
      c.hugoniot.family = h["family"].get<int>();
      if (c.hugoniot.family != 1 && c.hugoniot.family != 2) bad("hugoniot.family must be 1 or 2");
    }
    if (h.contains("s_min")) c.hugoniot.s_min = number(h["s_min"], "hugoniot.s_min");
    if (h.contains("s_max")) c.hugoniot.s_max = number(h["s_max"], "hugoniot.s_max");
    if (h.contains("step")) c.hugoniot.step = number(h["step"], "hugoniot.step");
    if (!(c.hugoniot.s_min <= 0 && c.hugoniot.s_max >= 0 && c.hugoniot.step > 0))
      bad("hugoniot needs s_min <= 0 <= s_max and step > 0");
  }
  if (j.contains("search")) {
    const auto& s = j["search"];
    if (!s.is_object()) bad("search must be an object");
    check_keys(s, {"strategy", "budget", "seed", "values_per_band", "starts"}, "search");
    if (s.contains("strategy")) {
      if (!s["strategy"].is_string()) bad("search.strategy must be a string");
      c.search.strategy = parse_strategy(s["strategy"].get<std::string>());
    }
    if (s.contains("budget")) {
      if (!s["budget"].is_number_integer() || s["budget"].get<long>() < 1)
        bad("search.budget must be an integer >= 1");
      c.search.budget = s["budget"].get<long>();
    }
    if (s.contains("seed")) {
      if (!s["seed"].is_number_unsigned()) bad("search.seed must be a nonnegative integer");
      c.search.seed = s["seed"].get<std::uint64_t>();
    }
    if (s.contains("values_per_band")) {
      if (!s["values_per_band"].is_number_integer() || s["values_per_band"].get<int>() < 1)
        bad("search.values_per_band must be a positive integer");
      c.search.values_per_band = s["values_per_band"].get<int>();
    }
    if (s.contains("starts")) {
      if (!s["starts"].is_number_integer() || s["starts"].get<int>() < 1)
        bad("search.starts must be a positive integer");
      c.search.starts = s["starts"].get<int>();
    }
  }
  if (j.contains("transform")) {
    const auto& t = j["transform"];
    if (!t.is_object()) bad("transform must be an object");
    check_keys(t, {"direction", "eps", "max"}, "transform");
    if (t.contains("direction")) {
      if (!t["direction"].is_string()) bad("transform.direction must be a string");
      c.transform.direction = t["direction"].get<std::string>();
    }
    if (c.transform.direction != "to-lagrangian" && c.transform.direction != "to-eulerian")
      bad("transform.direction must be to-lagrangian or to-eulerian");
    if (t.contains("eps")) c.transform.eps = number(t["eps"], "transform.eps");
    if (t.contains("max")) c.transform.max = number(t["max"], "transform.max");
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    if (!o.is_object()) bad("output must be an object");
    check_keys(o, {"dir", "csv", "json", "svg"}, "output");
    auto flag = [&](const char* k, bool& dst) {
      if (!o.contains(k)) return;
      if (!o[k].is_boolean()) bad(std::string("output.") + k + " must be a boolean");
      dst = o[k].get<bool>();
    };
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) bad("output.dir must be a string");
      c.output.dir = o["dir"].get<std::string>();
    }
    flag("csv", c.output.csv);
    flag("json", c.output.json);
    flag("svg", c.output.svg);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  return parse_config(j);
}

}  // namespace hyperlaw::report
