#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "hyperlaw/algebra.hpp"
#include "hyperlaw/jet.hpp"

namespace hyperlaw {

// Flux components, entropy and entropy flux, as jets in the state variables.
struct Triple {
  Jet f1, f2, eta, q;
};
using Model = std::function<Triple(const Jet&, const Jet&)>;

// Everything the analysis needs at one state.
struct Point {
  Vec2 U;
  Vec2 f;
  Mat22 Df;
  std::array<Mat22, 2> D2f;  // D2f[a](b,c) = d^2 f_a / dU_b dU_c
  double eta = 0, q = 0;
  Vec2 grad_eta, grad_q;
  Mat22 hess_eta, hess_q;

  // D^2 f(x, y) as a vector.
  Vec2 d2f(Vec2 x, Vec2 y) const { return {quad(D2f[0], x, y), quad(D2f[1], x, y)}; }
};

struct SystemSpec {
  std::string kind;
  std::string family;  // p_system pressure family: exp | power | shifted_power
  std::map<std::string, double> params;
  std::optional<Box> domain;
  // kind == "transformed"
  std::shared_ptr<SystemSpec> source;
  std::string direction;
  double strip_eps = 0, strip_max = 0;
  Vec2 tilt;

  double param(const std::string& key, double fallback) const;
};

class System {
public:
  System(std::string label, Model model, Box domain, SystemSpec spec,
         std::array<std::string, 2> names = {"u1", "u2"});

  Point eval(Vec2 U) const;
  Triple jets(const Jet& u1, const Jet& u2) const;
  bool contains(Vec2 U) const;
  void require(Vec2 U) const;

  Vec2 flux(Vec2 U) const;
  double eta(Vec2 U) const;
  double q(Vec2 U) const;

  const std::string& label() const { return label_; }
  const Box& box() const { return box_; }
  const SystemSpec& spec() const { return spec_; }
  Vec2 tilt_vector() const { return spec_.tilt; }
  const std::array<std::string, 2>& names() const { return names_; }

  // Additional membership test on top of the box (used by transformed systems).
  void set_predicate(std::function<bool(Vec2)> p) { predicate_ = std::move(p); }
  System with_tilt(Vec2 c) const;
  System restricted(const Box& b) const;

private:
  std::string label_;
  Model model_;
  Box box_;
  SystemSpec spec_;
  std::array<std::string, 2> names_;
  std::function<bool(Vec2)> predicate_;
};

System make_system(const SystemSpec& spec);

// Rows (u1, f1), (u2, f2), (eta, q).
Mat32 eval_G(const System& sys, Vec2 U);
Mat32 eval_G(const Point& p);

// eta + c.U and q + c.f; composes with any previous tilt.
System tilt(const System& sys, Vec2 c);

// grad q - grad eta . Df
Vec2 compatibility_residual(const System& sys, Vec2 U);

// Relative entropy eta(a|b).
double relative_entropy(const System& sys, Vec2 a, Vec2 b);

}  // namespace hyperlaw
