#include "hyperlaw/systems.hpp"
#include "hyperlaw/tn.hpp"

#include <cmath>
#include <sstream>

#include "hyperlaw/errors.hpp"
#include "hyperlaw/transform.hpp"

namespace hyperlaw {

double SystemSpec::param(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

System::System(std::string label, Model model, Box domain, SystemSpec spec,
               std::array<std::string, 2> names)
    : label_(std::move(label)),
      model_(std::move(model)),
      box_(domain),
      spec_(std::move(spec)),
      names_(std::move(names)) {}

bool System::contains(Vec2 U) const {
  if (!std::isfinite(U.x) || !std::isfinite(U.y) || !box_.contains(U)) return false;
  return !predicate_ || predicate_(U);
}

void System::require(Vec2 U) const {
  if (!contains(U)) {
    std::ostringstream os;
    os.precision(17);
    os << label_ << ": state (" << U.x << ", " << U.y << ") outside the domain";
    throw DomainError(os.str());
  }
}

Triple System::jets(const Jet& u1, const Jet& u2) const {
  Triple t = model_(u1, u2);
  const Vec2 c = spec_.tilt;
  if (c.x != 0.0 || c.y != 0.0) {
    t.eta = t.eta + c.x * u1 + c.y * u2;
    t.q = t.q + c.x * t.f1 + c.y * t.f2;
  }
  return t;
}

Point System::eval(Vec2 U) const {
  require(U);
  const Triple t = jets(Jet::variable(U.x, 0), Jet::variable(U.y, 1));
  Point p;
  p.U = U;
  p.f = {t.f1.v, t.f2.v};
  p.Df(0, 0) = t.f1.g.x;
  p.Df(0, 1) = t.f1.g.y;
  p.Df(1, 0) = t.f2.g.x;
  p.Df(1, 1) = t.f2.g.y;
  p.D2f = {t.f1.h, t.f2.h};
  p.eta = t.eta.v;
  p.q = t.q.v;
  p.grad_eta = t.eta.g;
  p.grad_q = t.q.g;
  p.hess_eta = t.eta.h;
  p.hess_q = t.q.h;
  return p;
}

Vec2 System::flux(Vec2 U) const { return eval(U).f; }
double System::eta(Vec2 U) const { return eval(U).eta; }
double System::q(Vec2 U) const { return eval(U).q; }

System System::with_tilt(Vec2 c) const {
  System s = *this;
  s.spec_.tilt = spec_.tilt + c;
  std::ostringstream os;
  os.precision(17);
  os << label_ << " tilted by (" << c.x << ", " << c.y << ")";
  s.label_ = os.str();
  return s;
}

System System::restricted(const Box& b) const {
  System s = *this;
  s.box_ = box_.intersect(b);
  s.spec_.domain = s.box_;
  return s;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigError(what); }

void require_positive(const SystemSpec& s, const std::string& key, double value) {
  if (!(value > 0) || !std::isfinite(value))
    bad(s.kind + ": parameter '" + key + "' must be positive and finite");
}

System p_system(const SystemSpec& spec) {
  const double a = spec.param("a", 1.0);
  const double b = spec.param("b", 1.0);
  const std::string fam = spec.family.empty() ? "exp" : spec.family;
  Box dom;
  Model model;
  if (fam == "exp") {
    // p = -a e^{bv}; p' < 0 needs ab > 0.
    if (!(a * b > 0)) bad("p_system exp: need a*b > 0 so that p' < 0");
    model = [a, b](const Jet& v, const Jet& u) {
      const Jet E = exp(b * v);
      const Jet p = -a * E;
      return Triple{-u, p, 0.5 * u * u + (a / b) * E, u * p};
    };
  } else if (fam == "power") {
    // p = a v^{-b}, v > 0.
    require_positive(spec, "a", a);
    require_positive(spec, "b", b);
    dom.lo.x = 0.0;
    model = [a, b](const Jet& v, const Jet& u) {
      const Jet p = a * pow(v, -b);
      const Jet minus_int = b == 1.0 ? -a * log(v) : (a / (b - 1.0)) * pow(v, 1.0 - b);
      return Triple{-u, p, 0.5 * u * u + minus_int, u * p};
    };
  } else if (fam == "shifted_power") {
    // p = -a (v + v0)^b, v > -v0.
    const double v0 = spec.param("v0", 1.0);
    require_positive(spec, "a", a);
    require_positive(spec, "b", b);
    dom.lo.x = -v0;
    model = [a, b, v0](const Jet& v, const Jet& u) {
      const Jet w = v + v0;
      const Jet p = -a * pow(w, b);
      return Triple{-u, p, 0.5 * u * u + (a / (b + 1.0)) * pow(w, b + 1.0), u * p};
    };
  } else {
    bad("p_system: unknown pressure family '" + fam + "'");
  }
  return System("p_system/" + fam, model, dom, spec, {"v", "u"});
}

System gradient_flux(const SystemSpec& spec) {
  const double a = spec.param("a", 1.0), b = spec.param("b", 0.0), c = spec.param("c", 1.0);
  if (!(a > 0 && c > 0 && a * c - b * b > 0))
    bad("gradient_flux: quadratic part must be positive definite (a>0, c>0, ac>b^2)");
  struct Term {
    double w, alpha, beta;
  };
  std::vector<Term> terms;
  for (int k = 1; k <= 3; ++k) {
    const std::string s = std::to_string(k);
    const double w = spec.param("w" + s, 0.0);
    if (w < 0) bad("gradient_flux: weight w" + s + " must be nonnegative");
    if (w > 0) terms.push_back({w, spec.param("alpha" + s, 0.0), spec.param("beta" + s, 0.0)});
  }
  Model model = [a, b, c, terms](const Jet& v, const Jet& u) {
    Jet eta = 0.5 * (a * v * v + 2.0 * b * v * u + c * u * u);
    Jet eta_v = a * v + b * u;
    Jet eta_u = b * v + c * u;
    for (const Term& t : terms) {
      const Jet E = t.w * exp(t.alpha * v + t.beta * u);
      eta = eta + E;
      eta_v = eta_v + t.alpha * E;
      eta_u = eta_u + t.beta * E;
    }
    return Triple{eta_u, eta_v, eta, eta_u * eta_v};
  };
  return System("gradient_flux", model, Box{}, spec, {"v", "u"});
}

struct PressureTerm {
  double kappa, gamma;
};

System euler(const SystemSpec& spec, std::vector<PressureTerm> terms, const std::string& label) {
  for (const auto& t : terms) {
    if (!(t.kappa > 0) || !std::isfinite(t.kappa)) bad(spec.kind + ": kappa must be positive");
    if (!(t.gamma > 1) || !std::isfinite(t.gamma)) bad(spec.kind + ": gamma must exceed 1");
  }
  const double rho_min = spec.param("rho_min", 1e-3);
  require_positive(spec, "rho_min", rho_min);
  Box dom;
  dom.lo.x = rho_min;
  Model model = [terms](const Jet& rho, const Jet& m) {
    Jet P = Jet::constant(0.0), S = Jet::constant(0.0), dS = Jet::constant(0.0);
    for (const auto& t : terms) {
      P = P + t.kappa * pow(rho, t.gamma);
      S = S + (t.kappa / (t.gamma - 1.0)) * pow(rho, t.gamma);
      dS = dS + (t.kappa * t.gamma / (t.gamma - 1.0)) * pow(rho, t.gamma - 1.0);
    }
    const Jet vel = m / rho;
    return Triple{m, m * vel + P, 0.5 * m * vel + S, 0.5 * m * vel * vel + m * dS};
  };
  return System(label, model, dom, spec, {"rho", "m"});
}

System two_burgers(const SystemSpec& spec) {
  struct Poly {
    double a, b, k, w;
  };
  auto get = [&](const std::string& p, double a_default) {
    return Poly{spec.param(p + "_a", a_default), spec.param(p + "_b", 0.0),
                spec.param(p + "_k", 0.0), 1.0};
  };
  Poly p1 = get("f1", 1.0), p2 = get("f2", 1.0);
  p1.w = spec.param("h", 1.0);
  p2.w = spec.param("g", 1.0);
  require_positive(spec, "h", p1.w);
  require_positive(spec, "g", p2.w);
  // f = b u + a u^2/2 + k u^3, entropy w u^2/2, flux int_0^u w s f'(s) ds.
  auto parts = [](const Poly& p, const Jet& u) {
    const Jet u2 = u * u;
    const Jet f = p.b * u + (0.5 * p.a) * u2 + p.k * u2 * u;
    const Jet e = (0.5 * p.w) * u2;
    const Jet q = p.w * ((0.5 * p.b) * u2 + (p.a / 3.0) * u2 * u + (0.75 * p.k) * u2 * u2);
    return std::array<Jet, 3>{f, e, q};
  };
  Model model = [p1, p2, parts](const Jet& u1, const Jet& u2) {
    const auto a = parts(p1, u1);
    const auto b = parts(p2, u2);
    return Triple{a[0], b[0], a[1] + b[1], a[2] + b[2]};
  };
  return System("two_burgers", model, Box{}, spec, {"u1", "u2"});
}

}  // namespace

System make_system(const SystemSpec& spec) {
  System sys = [&]() -> System {
    if (spec.kind == "p_system") return p_system(spec);
    if (spec.kind == "gradient_flux") return gradient_flux(spec);
    if (spec.kind == "gamma_law")
      return euler(spec, {{spec.param("kappa", 1.0), spec.param("gamma", 2.0)}}, "gamma_law");
    if (spec.kind == "isentropic_euler") {
      std::vector<PressureTerm> terms{{spec.param("kappa", 1.0), spec.param("gamma", 2.0)}};
      if (spec.params.count("kappa2"))
        terms.push_back({spec.param("kappa2", 0.0), spec.param("gamma2", 2.0)});
      return euler(spec, terms, "isentropic_euler");
    }
    if (spec.kind == "shallow_water") {
      const double g = spec.param("g", 1.0);
      require_positive(spec, "g", g);
      return euler(spec, {{0.5 * g, 2.0}}, "shallow_water");
    }
    if (spec.kind == "two_burgers") return two_burgers(spec);
    if (spec.kind == "planted_t4") return planted_t4(spec).system;
    if (spec.kind == "transformed") {
      if (!spec.source) bad("transformed: missing source system");
      if (spec.direction != "to-lagrangian" && spec.direction != "to-eulerian")
        bad("transformed: direction must be to-lagrangian or to-eulerian");
      const System src = make_system(*spec.source);
      return spec.direction == "to-lagrangian"
                 ? to_lagrangian(src, spec.strip_eps, spec.strip_max).system
                 : to_eulerian(src, spec.strip_eps, spec.strip_max).system;
    }
    bad("unknown system kind '" + spec.kind + "'");
  }();
  if (spec.domain) sys = sys.restricted(*spec.domain);
  const Vec2 extra = spec.tilt - sys.spec().tilt;
  if (extra.x != 0.0 || extra.y != 0.0) sys = sys.with_tilt(extra);
  return sys;
}

Mat32 eval_G(const Point& p) {
  Mat32 G;
  G(0, 0) = p.U.x;
  G(0, 1) = p.f.x;
  G(1, 0) = p.U.y;
  G(1, 1) = p.f.y;
  G(2, 0) = p.eta;
  G(2, 1) = p.q;
  return G;
}

Mat32 eval_G(const System& sys, Vec2 U) { return eval_G(sys.eval(U)); }

System tilt(const System& sys, Vec2 c) { return sys.with_tilt(c); }

Vec2 compatibility_residual(const System& sys, Vec2 U) {
  const Point p = sys.eval(U);
  return p.grad_q - p.grad_eta * p.Df;
}

double relative_entropy(const System& sys, Vec2 a, Vec2 b) {
  const Point pb = sys.eval(b);
  return sys.eta(a) - pb.eta - dot(pb.grad_eta, a - b);
}

}  // namespace hyperlaw
