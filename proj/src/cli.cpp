#include "hyperlaw/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hyperlaw/errors.hpp"
#include "hyperlaw/report.hpp"

namespace hyperlaw {

namespace {

namespace fs = std::filesystem;
using report::json;

struct Args {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<long> budget;
  std::optional<std::string> strategy;
  std::optional<std::string> to;
  std::optional<double> eps, max;
  bool timing = false;
  bool expect_none = false;
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  f << text;
}

fs::path out_dir(const report::RunConfig& c, const Args& a) {
  fs::path dir = a.out.empty() ? fs::path(c.output.dir) : fs::path(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "'");
  return dir;
}

int analyze(const report::RunConfig& c, const Args& a, std::ostream& out) {
  if (c.levels.empty()) throw ConfigError("config: analyze needs levels");
  const System sys = make_system(c.system);
  HypothesisOptions opt;
  opt.n_samples = c.samples;
  opt.level.window = c.window;
  const Box region = c.region.value_or(c.window);
  const auto tilts = c.tilts.empty() ? HypothesisOptions::default_tilts() : c.tilts;
  const HypothesisReport r = hypothesis_report(sys, region, tilts, c.levels, opt);
  const fs::path dir = out_dir(c, a);
  if (c.output.json) write_file(dir / "hypothesis_report.json", report::dump(report::to_json(r)));
  for (const auto* group : {&r.h1, &r.h2})
    for (const auto& v : *group) out << v.item << ": " << to_string(v.status) << '\n';
  return 0;
}

int hugoniot(const report::RunConfig& c, const Args& a, std::ostream& out) {
  const System sys = make_system(c.system);
  TraceOptions opt;
  opt.s_min = c.hugoniot.s_min;
  opt.s_max = c.hugoniot.s_max;
  opt.step = c.hugoniot.step;
  ShockCurve curve = trace_hugoniot(sys, c.hugoniot.base, c.hugoniot.family, opt);
  dissipation_profile(sys, curve);
  const LiuLaxReport ll = liu_lax_check(sys, curve);
  const fs::path dir = out_dir(c, a);
  if (c.output.csv) write_file(dir / "hugoniot.csv", report::hugoniot_csv(curve));
  if (c.output.json)
    write_file(dir / "hugoniot.json", report::dump(report::hugoniot_json(sys, curve, ll)));
  out << "samples: " << curve.samples.size() << ", liu: " << (ll.liu ? "yes" : "no")
      << ", lax_e: " << (ll.lax_e ? "yes" : "no") << '\n';
  return 0;
}

int levelset(const report::RunConfig& c, const Args& a, std::ostream& out) {
  if (!c.level) throw ConfigError("config: levelset needs level");
  const System sys = make_system(c.system);
  const System tsys = sys.with_tilt(c.tilt);
  LevelOptions lopt;
  lopt.window = c.window;
  const LevelCurve curve = trace_level_set(tsys, *c.level, lopt);
  const ExtremaReport ext = qtilde_extrema(tsys, curve);

  std::optional<LevelDecomposition> dec;
  std::string note;
  Box hull{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
  for (const auto& s : curve.samples) {
    hull.lo = {std::min(hull.lo.x, s.U.x), std::min(hull.lo.y, s.U.y)};
    hull.hi = {std::max(hull.hi.x, s.U.x), std::max(hull.hi.y, s.U.y)};
  }
  try {
    const SectorResult sec = sector_search(sys, hull, c.samples);
    if (!sec.found) {
      note = "no sector vectors on the curve's bounding box: " + sec.reason;
    } else {
      dec = decompose(tsys, curve, sec.w1, sec.w2, &ext);
      note = dec->rule;
    }
  } catch (const NumericalError& e) {
    note = e.what();
  } catch (const DomainError& e) {
    note = e.what();
  }

  const fs::path dir = out_dir(c, a);
  if (c.output.csv)
    write_file(dir / "levelset.csv", report::level_csv(tsys, curve, dec ? &*dec : nullptr));
  if (c.output.json)
    write_file(dir / "levelset.json", report::dump(report::level_json(tsys, curve, ext, dec, note)));
  out << "samples: " << curve.samples.size() << (curve.closed ? ", closed" : ", open")
      << ", extrema: " << ext.points.size() << '\n';
  return 0;
}

int search(const report::RunConfig& c, const Args& a, std::ostream& out) {
  const System sys = make_system(c.system);
  SearchOptions opt;
  opt.strategy = a.strategy ? parse_strategy(*a.strategy) : c.search.strategy;
  opt.budget = a.budget.value_or(c.search.budget);
  if (opt.budget < 1) throw ArgumentError("--budget must be at least 1");
  const auto seed = a.seed ? a.seed : c.search.seed;
  if (!seed) throw ConfigError("config: t4-search needs a seed (search.seed or --seed)");
  opt.seed = *seed;
  opt.tilts = c.tilts;
  opt.levels = c.levels;
  opt.values_per_band = c.search.values_per_band;
  opt.region = c.region.value_or(c.window);
  opt.level.window = c.window;
  opt.solver.starts = c.search.starts;
  opt.timing = a.timing;
  const SearchReport r = t4_search(sys, opt);
  const fs::path dir = out_dir(c, a);
  if (c.output.json) write_file(dir / "search_report.json", report::dump(report::to_json(r)));
  out << "examined: " << r.examined << ", passed: " << r.passed
      << ", best_residual: " << report::fmt(r.best_residual) << '\n';
  return a.expect_none && r.passed > 0 ? 3 : 0;
}

int transform_cmd(const report::RunConfig& c, const Args& a, std::ostream& out) {
  std::string direction = c.transform.direction;
  if (a.to) {
    if (*a.to == "lagrangian" || *a.to == "to-lagrangian")
      direction = "to-lagrangian";
    else if (*a.to == "eulerian" || *a.to == "to-eulerian")
      direction = "to-eulerian";
    else
      throw ArgumentError("--to must be lagrangian or eulerian");
  }
  const double eps = a.eps.value_or(c.transform.eps);
  const double M = a.max.value_or(c.transform.max);
  const System sys = make_system(c.system);
  const Transformed t =
      direction == "to-lagrangian" ? to_lagrangian(sys, eps, M) : to_eulerian(sys, eps, M);
  json cfg{{"schema", report::schema_version}, {"system", report::to_json(t.record.target_spec)}};
  const fs::path dir = out_dir(c, a);
  if (c.output.json) {
    write_file(dir / "transform.json", report::dump(report::to_json(t.record)));
    write_file(dir / "transformed_config.json", report::dump(cfg));
  }
  out << t.system.label() << '\n';
  return 0;
}

int figure8(const report::RunConfig& c, const Args& a, std::ostream& out) {
  if (!c.level) throw ConfigError("config: figure8 needs level");
  const System sys = make_system(c.system);
  const System tsys = sys.with_tilt(c.tilt);
  LevelOptions lopt;
  lopt.window = c.window;
  const report::FigureData d = report::figure8_data(tsys, sys, *c.level, lopt, c.shock_span);
  const fs::path dir = out_dir(c, a);
  if (c.output.svg) write_file(dir / "figure8.svg", report::figure8_svg(d));
  if (c.output.json) write_file(dir / "figure8.json", report::dump(report::figure8_json(d)));
  out << "extrema: " << d.extrema.points.size() << ", marked: " << d.marked.size() << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy-pair and T4 analysis for 2x2 conservation laws", "hyperlaw"};
  app.require_subcommand(1);
  Args a;
  using Handler = int (*)(const report::RunConfig&, const Args&, std::ostream&);
  std::vector<std::pair<CLI::App*, Handler>> subs;

  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--config", a.config, "JSON run configuration")->required();
    s->add_option("--out", a.out, "output directory (overrides output.dir)");
    subs.emplace_back(s, h);
    return s;
  };
  add("analyze", "hypothesis report as JSON", analyze);
  add("hugoniot", "trace a Hugoniot curve, CSV and JSON summary", hugoniot);
  add("levelset", "level set, arc decomposition and extrema", levelset);
  CLI::App* t4 = add("t4-search", "search for T4 configurations", search);
  t4->add_option("--seed", a.seed, "search seed");
  t4->add_option("--budget", a.budget, "candidate budget");
  t4->add_option("--strategy", a.strategy, "reduced-level-set | random | local-descent");
  t4->add_flag("--timing", a.timing, "record wall time in the report");
  t4->add_flag("--expect-none", a.expect_none, "exit 3 if a candidate passes");
  CLI::App* tr = add("transform", "Eulerian/Lagrangian change of variables", transform_cmd);
  tr->add_option("--to", a.to, "lagrangian | eulerian");
  tr->add_option("--eps", a.eps, "lower end of the validity strip");
  tr->add_option("--max", a.max, "upper end of the validity strip (0: none)");
  add("figure8", "level set with q~ zero points and shock curves as SVG", figure8);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    const report::RunConfig cfg = report::load_config(a.config);
    for (const auto& [s, h] : subs)
      if (s->parsed()) return h(cfg, a, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const ArgumentError& e) {
    err << "argument error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace hyperlaw
