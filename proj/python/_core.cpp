#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hyperlaw/characteristic.hpp"
#include "hyperlaw/cli.hpp"
#include "hyperlaw/errors.hpp"
#include "hyperlaw/hypothesis.hpp"
#include "hyperlaw/report.hpp"
#include "hyperlaw/shock_curves.hpp"
#include "hyperlaw/tn.hpp"
#include "hyperlaw/transform.hpp"

namespace py = pybind11;
using namespace hyperlaw;
using report::json;

namespace {

// Documents cross the boundary as JSON text so Python sees plain dicts.
py::object to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

json from_py(const py::handle& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

using Pair = std::array<double, 2>;
Vec2 vec(const Pair& p) { return {p[0], p[1]}; }
Pair pair(Vec2 v) { return {v.x, v.y}; }

Box to_box(const py::handle& o) { return report::box_from_json(from_py(o), "box"); }

Mat32 to_mat(const std::array<Pair, 3>& rows) {
  Mat32 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = rows[i][j];
  return m;
}

std::array<Pair, 3> from_mat(const Mat32& m) {
  return {Pair{m(0, 0), m(0, 1)}, Pair{m(1, 0), m(1, 1)}, Pair{m(2, 0), m(2, 1)}};
}

std::array<Mat32, 4> quadruple(const std::vector<std::array<Pair, 3>>& X) {
  if (X.size() != 4) throw ArgumentError("expected four 3x2 matrices");
  return {to_mat(X[0]), to_mat(X[1]), to_mat(X[2]), to_mat(X[3])};
}

Orientation orientation(const std::string& s) {
  if (s == "normalized") return Orientation::normalized;
  if (s == "catalog") return Orientation::catalog;
  throw ArgumentError("orientation must be 'normalized' or 'catalog'");
}

json curve_json(const System& sys, const ShockCurve& c) {
  json j = report::hugoniot_json(sys, c, liu_lax_check(sys, c));
  json s = json::array();
  for (const auto& p : c.samples)
    s.push_back({{"s", p.s},
                 {"U", report::to_json(p.U)},
                 {"sigma", p.sigma},
                 {"rh_residual", p.rh_residual},
                 {"dissipation_direct", p.dissipation_direct},
                 {"dissipation_integral", std::isfinite(p.dissipation_integral)
                                              ? json(p.dissipation_integral)
                                              : json(nullptr)}});
  j["points"] = s;
  j["origin"] = c.origin;
  return j;
}

json level_json(const System& sys, const LevelCurve& c) {
  json j{{"level", c.C}, {"closed", c.closed}, {"clipped", c.clipped}, {"tilt", report::to_json(c.tilt)}};
  json t = json::array(), U = json::array();
  for (const auto& s : c.samples) {
    t.push_back(s.t);
    U.push_back(report::to_json(s.U));
  }
  j["t"] = t;
  j["U"] = U;
  j["eta_min"] = c.eta_min;
  j["system"] = sys.label();
  return j;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropy-pair geometry and T4 search for 2x2 conservation laws";

  // Translators run newest first, so the base class goes in first.
  const auto& base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::class_<System>(m, "System")
      .def_property_readonly("label", &System::label)
      .def_property_readonly("spec", [](const System& s) { return to_py(report::to_json(s.spec())); })
      .def_property_readonly("domain", [](const System& s) { return to_py(report::to_json(s.box())); })
      .def_property_readonly("names", &System::names)
      .def("contains", [](const System& s, Pair U) { return s.contains(vec(U)); })
      .def("flux", [](const System& s, Pair U) { return pair(s.flux(vec(U))); })
      .def("eta", [](const System& s, Pair U) { return s.eta(vec(U)); })
      .def("q", [](const System& s, Pair U) { return s.q(vec(U)); })
      .def("G", [](const System& s, Pair U) { return from_mat(eval_G(s, vec(U))); },
           "Rows (u1, f1), (u2, f2), (eta, q).")
      .def("tilted", [](const System& s, Pair c) { return s.with_tilt(vec(c)); })
      .def("__repr__", [](const System& s) { return "<hyperlaw.System " + s.label() + ">"; });

  m.def("make_system", [](const py::dict& spec) { return make_system(report::spec_from_json(from_py(spec))); },
        py::arg("spec"));

  m.def(
      "eigenframe",
      [](const System& s, Pair U, const std::string& o) {
        return to_py(report::to_json(eigenframe(s, vec(U), orientation(o))));
      },
      py::arg("system"), py::arg("U"), py::arg("orientation") = "normalized");
  m.def(
      "genuine_nonlinearity",
      [](const System& s, Pair U, const std::string& o) {
        return genuine_nonlinearity(s, vec(U), orientation(o));
      },
      py::arg("system"), py::arg("U"), py::arg("orientation") = "normalized");
  m.def(
      "smoller_johnson",
      [](const System& s, Pair U, const std::string& o) {
        return smoller_johnson(s, vec(U), orientation(o));
      },
      py::arg("system"), py::arg("U"), py::arg("orientation") = "normalized");
  m.def(
      "sector_search",
      [](const System& s, const py::dict& region, int n) {
        return to_py(report::to_json(sector_search(s, to_box(region), n)));
      },
      py::arg("system"), py::arg("region"), py::arg("n_samples") = 400);

  m.def(
      "trace_hugoniot",
      [](const System& s, Pair U0, int family, double s_min, double s_max, double step) {
        ShockCurve c = trace_hugoniot(s, vec(U0), family, s_min, s_max, step);
        dissipation_profile(s, c);
        return to_py(curve_json(s, c));
      },
      py::arg("system"), py::arg("U0"), py::arg("family"), py::arg("s_min") = -5.0,
      py::arg("s_max") = 5.0, py::arg("step") = 0.05);

  m.def(
      "trace_level_set",
      [](const System& s, double C, const py::object& window) {
        LevelOptions opt;
        if (!window.is_none()) opt.window = to_box(window);
        return to_py(level_json(s, trace_level_set(s, C, opt)));
      },
      py::arg("system"), py::arg("level"), py::arg("window") = py::none());
  m.def(
      "levelset_report",
      [](const System& s, double C, const py::object& window) {
        LevelOptions opt;
        if (!window.is_none()) opt.window = to_box(window);
        const LevelCurve c = trace_level_set(s, C, opt);
        return to_py(report::level_json(s, c, qtilde_extrema(s, c), std::nullopt, ""));
      },
      py::arg("system"), py::arg("level"), py::arg("window") = py::none());

  m.def(
      "hypothesis_report",
      [](const System& s, const py::dict& region, const std::vector<Pair>& tilts,
         const std::vector<double>& levels, int n_samples) {
        HypothesisOptions opt;
        opt.n_samples = n_samples;
        std::vector<Vec2> t;
        for (auto p : tilts) t.push_back(vec(p));
        const Box b = to_box(region);
        const HypothesisReport r = [&] {
          py::gil_scoped_release release;
          return hypothesis_report(s, b, t, levels, opt);
        }();
        return to_py(report::to_json(r));
      },
      py::arg("system"), py::arg("region"), py::arg("tilts"), py::arg("levels"),
      py::arg("n_samples") = 400);

  m.def(
      "tn_sign_test",
      [](const std::vector<std::array<Pair, 3>>& X) {
        const SignTest t = tn_sign_test(quadruple(X));
        py::dict d;
        d["excluded"] = t.excluded;
        d["witness_i"] = t.witness_i;
        d["witness_rs"] = t.witness_rs;
        d["tolerance"] = t.tolerance;
        d["exclusions"] = t.exclusions;
        d["inconclusive"] = t.inconclusive;
        return d;
      },
      py::arg("X"));
  m.def(
      "tn_solve",
      [](const std::vector<std::array<Pair, 3>>& X, int starts, std::uint64_t seed) {
        TNSolveOptions opt;
        opt.starts = starts;
        opt.seed = seed;
        const TNSolveResult r = tn_solve(quadruple(X), opt);
        py::dict d;
        d["success"] = r.success;
        d["residual"] = r.residual;
        d["reconstruction_error"] = r.reconstruction_error;
        d["starts_run"] = r.starts_run;
        d["near_rank_one"] = r.near_rank_one;
        std::vector<std::array<double, 3>> a(r.config.a.begin(), r.config.a.end());
        std::vector<Pair> n;
        for (auto v : r.config.n) n.push_back(pair(v));
        d["P"] = from_mat(r.config.P);
        d["a"] = a;
        d["n"] = n;
        d["kappa"] = r.config.kappa;
        d["order"] = r.config.order;
        return d;
      },
      py::arg("X"), py::arg("starts") = 64, py::arg("seed") = 0);
  m.def(
      "find_tilt",
      [](const System& s, const std::vector<Pair>& U) {
        if (U.size() != 4) throw ArgumentError("find_tilt: expected four states");
        const TiltFit f = find_tilt(s, {vec(U[0]), vec(U[1]), vec(U[2]), vec(U[3])});
        py::dict d;
        d["degenerate"] = f.degenerate;
        d["c"] = pair(f.c);
        d["eta_level"] = f.eta_level;
        d["eta_residual"] = f.eta_residual;
        d["q_level"] = f.q_level;
        d["q_residual"] = f.q_residual;
        return d;
      },
      py::arg("system"), py::arg("U"));
  m.def(
      "t4_search",
      [](const System& s, const std::string& strategy, long budget, std::uint64_t seed,
         const std::vector<Pair>& tilts, const std::vector<double>& levels,
         const py::object& region, const py::object& window) {
        SearchOptions opt;
        opt.strategy = parse_strategy(strategy);
        opt.budget = budget;
        opt.seed = seed;
        for (auto p : tilts) opt.tilts.push_back(vec(p));
        opt.levels = levels;
        if (!window.is_none()) opt.level.window = to_box(window);
        opt.region = region.is_none() ? opt.level.window : to_box(region);
        const SearchReport r = [&] {
          py::gil_scoped_release release;
          return t4_search(s, opt);
        }();
        return to_py(report::to_json(r));
      },
      py::arg("system"), py::arg("strategy") = "reduced-level-set", py::arg("budget") = 10000,
      py::arg("seed") = 1, py::arg("tilts") = std::vector<Pair>{},
      py::arg("levels") = std::vector<double>{}, py::arg("region") = py::none(),
      py::arg("window") = py::none());
  m.def("planted_t4", []() {
    const PlantedT4 p = planted_t4();
    py::dict d;
    d["system"] = p.system;
    std::vector<std::array<Pair, 3>> X;
    std::vector<Pair> U;
    for (int i = 0; i < 4; ++i) {
      X.push_back(from_mat(p.X[i]));
      U.push_back(pair(p.U[i]));
    }
    d["X"] = X;
    d["U"] = U;
    d["level"] = p.level;
    return d;
  });

  auto transform = [](bool lagrangian) {
    return [lagrangian](const System& s, double eps, double M) {
      const Transformed t = lagrangian ? to_lagrangian(s, eps, M) : to_eulerian(s, eps, M);
      return py::make_tuple(t.system, to_py(report::to_json(t.record)));
    };
  };
  m.def("to_lagrangian", transform(true), py::arg("system"), py::arg("eps"), py::arg("M") = 0.0);
  m.def("to_eulerian", transform(false), py::arg("system"), py::arg("eps"), py::arg("M") = 0.0);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "hyperlaw");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
}
