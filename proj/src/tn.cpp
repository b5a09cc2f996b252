#include "hyperlaw/tn.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include <gsl/gsl_multimin.h>

#include "hyperlaw/errors.hpp"
#include "hyperlaw/parallel.hpp"

namespace hyperlaw {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::vector<Mat32> TNConfig::matrices() const {
  std::vector<Mat32> X;
  Mat32 acc = P;
  for (int i = 0; i < N(); ++i) {
    X.push_back(acc + kappa[i] * C(i));
    acc = acc + C(i);
  }
  return X;
}

double TNConfig::closure() const {
  Mat32 s;
  for (int i = 0; i < N(); ++i) s = s + C(i);
  return frobenius(s);
}

std::vector<Mat32> tn_synthesize(const Mat32& P, const std::vector<Row3>& a,
                                 const std::vector<Vec2>& n, const std::vector<double>& kappa) {
  const size_t N = a.size();
  if (N < 4) throw ArgumentError("tn_synthesize: need N >= 4");
  if (n.size() != N || kappa.size() != N)
    throw ArgumentError("tn_synthesize: a, n and kappa must have the same length");
  TNConfig cfg;
  cfg.P = P;
  cfg.a = a;
  cfg.n = n;
  cfg.kappa = kappa;
  double cmax = 0;
  for (size_t i = 0; i < N; ++i) {
    if (!(kappa[i] > 1)) throw ArgumentError("tn_synthesize: kappa_i must exceed 1");
    cmax = std::max(cmax, frobenius(cfg.C(static_cast<int>(i))));
  }
  if (cmax == 0) throw ArgumentError("tn_synthesize: all C_i vanish");
  if (cfg.closure() > 1e-10 * cmax) throw ArgumentError("tn_synthesize: sum of C_i is not zero");
  return cfg.matrices();
}

namespace {

double spread(const std::array<Mat32, 4>& X) {
  double s = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) s = std::max(s, frobenius(X[i] - X[j]));
  return s;
}

void require_distinct(const std::array<Mat32, 4>& X, const char* who) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (frobenius(X[i] - X[j]) == 0)
        throw ArgumentError(std::string(who) + ": matrices " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " coincide");
}

}  // namespace

SignTest tn_sign_test(const std::array<Mat32, 4>& X, double rel_tol) {
  require_distinct(X, "tn_sign_test");
  SignTest out;
  const double s = spread(X);
  out.tolerance = rel_tol * s * s;
  const std::array<std::array<int, 2>, 3> pairs{{{1, 3}, {2, 3}, {1, 2}}};
  for (const auto& rs : pairs) {
    const std::string key = std::to_string(rs[0]) + std::to_string(rs[1]);
    for (int i = 0; i < 4; ++i) {
      int pos = 0, neg = 0, zero = 0;
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        const double d = subdet(X[i] - X[j], rs[0], rs[1]);
        if (d > out.tolerance)
          ++pos;
        else if (d < -out.tolerance)
          ++neg;
        else
          ++zero;
      }
      if (zero == 0 && (pos == 0 || neg == 0)) {
        ++out.exclusions[key];
        if (!out.excluded) {
          out.excluded = true;
          out.witness_i = i;
          out.witness_rs = rs;
        }
      } else if (zero > 0 && (pos == 0 || neg == 0) && zero < 3) {
        ++out.inconclusive;
      }
    }
  }
  return out;
}

namespace {

// P and a_i solved by least squares for fixed n_i and kappa_i. The 10 x 6
// design matrix is shared by the three rows.
struct Projection {
  std::array<Mat32, 4> X;  // in trial order
  double scale = 1;

  static Vec2 dir(double t) { return {std::cos(t), std::sin(t)}; }
  static double kap(double r) { return 1.0 + std::exp(r); }

  Eigen::Matrix<double, 10, 6> design(const double* x) const {
    Eigen::Matrix<double, 10, 6> A = Eigen::Matrix<double, 10, 6>::Zero();
    std::array<Vec2, 4> n;
    for (int i = 0; i < 4; ++i) n[i] = dir(x[i]);
    for (int i = 0; i < 4; ++i)
      for (int c = 0; c < 2; ++c) {
        const int row = 2 * i + c;
        A(row, c) = 1;
        for (int j = 0; j < i; ++j) A(row, 2 + j) = c == 0 ? n[j].x : n[j].y;
        A(row, 2 + i) = kap(x[4 + i]) * (c == 0 ? n[i].x : n[i].y);
      }
    for (int j = 0; j < 4; ++j) {
      A(8, 2 + j) = n[j].x;
      A(9, 2 + j) = n[j].y;
    }
    return A;
  }

  // Residual (30 entries, divided by scale) and the row solutions.
  void evaluate(const double* x, double* r, std::array<Eigen::Matrix<double, 6, 1>, 3>* z) const {
    const auto A = design(x);
    const Eigen::ColPivHouseholderQR<Eigen::Matrix<double, 10, 6>> qr(A);
    for (int row = 0; row < 3; ++row) {
      Eigen::Matrix<double, 10, 1> b = Eigen::Matrix<double, 10, 1>::Zero();
      for (int i = 0; i < 4; ++i) {
        b(2 * i) = X[i](row, 0);
        b(2 * i + 1) = X[i](row, 1);
      }
      const Eigen::Matrix<double, 6, 1> sol = qr.solve(b);
      const Eigen::Matrix<double, 10, 1> res = A * sol - b;
      for (int k = 0; k < 10; ++k) r[10 * row + k] = res(k) / scale;
      if (z) (*z)[row] = sol;
    }
  }
};

struct LmFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  const Projection* proj;
  int inputs() const { return 8; }
  int values() const { return 30; }
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    proj->evaluate(x.data(), f.data(), nullptr);
    return 0;
  }
};

double residual_norm(const Projection& p, const Eigen::VectorXd& x) {
  Eigen::VectorXd f(30);
  p.evaluate(x.data(), f.data(), nullptr);
  return f.norm();
}

// Gauss-Newton with a central-difference Jacobian. The LM driver stops on
// its relative step test a few digits short of a zero residual.
double polish(const Projection& proj, Eigen::VectorXd& x, double r) {
  Eigen::Matrix<double, 30, 8> J;
  Eigen::Matrix<double, 30, 1> f, fp, fm;
  for (int it = 0; it < 10; ++it) {
    proj.evaluate(x.data(), f.data(), nullptr);
    for (int k = 0; k < 8; ++k) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(k)));
      Eigen::VectorXd y = x;
      y(k) += h;
      proj.evaluate(y.data(), fp.data(), nullptr);
      y(k) -= 2 * h;
      proj.evaluate(y.data(), fm.data(), nullptr);
      J.col(k) = (fp - fm) / (2 * h);
    }
    const Eigen::Matrix<double, 8, 1> dx = J.colPivHouseholderQr().solve(-f);
    Eigen::VectorXd y = x + dx;
    const double ry = residual_norm(proj, y);
    if (!(ry < r)) break;
    x = y;
    r = ry;
  }
  return r;
}

const std::array<std::array<int, 4>, 6> kOrders{{{0, 1, 2, 3},
                                                 {0, 1, 3, 2},
                                                 {0, 2, 1, 3},
                                                 {0, 2, 3, 1},
                                                 {0, 3, 1, 2},
                                                 {0, 3, 2, 1}}};

}  // namespace

TNSolveResult tn_solve(const std::array<Mat32, 4>& X, const TNSolveOptions& opt) {
  require_distinct(X, "tn_solve");
  TNSolveResult out;
  out.min_pair_rank_one = INFINITY;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double r = rank_one_residual(X[i] - X[j]);
      out.min_pair_rank_one = std::min(out.min_pair_rank_one, r);
      if (r < opt.rank_one_fail)
        throw StructuralError("tn_solve: X_" + std::to_string(i + 1) + " - X_" +
                                  std::to_string(j + 1) + " is rank one",
                              i, j);
    }
  out.near_rank_one = out.min_pair_rank_one < opt.rank_one_warn;

  const double scale = spread(X);
  std::mt19937_64 rng(splitmix64(opt.seed));
  std::uniform_real_distribution<double> angle(0, std::numbers::pi), logk(-1.5, 1.5);
  double best = INFINITY;
  Eigen::VectorXd best_x;
  int best_order = 0;
  for (int s = 0; s < opt.starts && !out.success; ++s) {
    Eigen::VectorXd x0(8);
    for (int k = 0; k < 4; ++k) x0(k) = angle(rng);
    for (int k = 4; k < 8; ++k) x0(k) = logk(rng);
    for (int o = 0; o < 6; ++o) {
      Projection proj;
      for (int k = 0; k < 4; ++k) proj.X[k] = X[kOrders[o][k]];
      proj.scale = scale;
      LmFunctor fn{&proj};
      Eigen::NumericalDiff<LmFunctor> nd(fn);
      Eigen::LevenbergMarquardt<Eigen::NumericalDiff<LmFunctor>> lm(nd);
      lm.parameters.ftol = 1e-15;
      lm.parameters.xtol = 1e-15;
      lm.parameters.maxfev = 400;
      Eigen::VectorXd x = x0;
      lm.minimize(x);
      double r = residual_norm(proj, x);
      if (r < 1e-3 && r >= opt.threshold) r = polish(proj, x, r);
      if (r < best) {
        best = r;
        best_x = x;
        best_order = o;
      }
      if (best < opt.threshold) {
        out.success = true;
        break;
      }
    }
    out.starts_run = s + 1;
  }
  out.residual = best;

  Projection proj;
  for (int k = 0; k < 4; ++k) proj.X[k] = X[kOrders[best_order][k]];
  proj.scale = scale;
  std::array<Eigen::Matrix<double, 6, 1>, 3> z;
  std::array<double, 30> r{};
  proj.evaluate(best_x.data(), r.data(), &z);
  TNConfig& cfg = out.config;
  cfg.order.assign(kOrders[best_order].begin(), kOrders[best_order].end());
  for (int row = 0; row < 3; ++row) {
    cfg.P(row, 0) = z[row](0);
    cfg.P(row, 1) = z[row](1);
  }
  for (int i = 0; i < 4; ++i) {
    Vec2 n = Projection::dir(best_x(i));
    Row3 a{z[0](2 + i), z[1](2 + i), z[2](2 + i)};
    if (n.x < 0 || (n.x == 0 && n.y < 0)) {
      n = -n;
      for (double& v : a) v = -v;
    }
    cfg.n.push_back(n);
    cfg.a.push_back(a);
    cfg.kappa.push_back(Projection::kap(best_x(4 + i)));
  }
  const auto M = cfg.matrices();
  for (int k = 0; k < 4; ++k)
    out.reconstruction_error =
        std::max(out.reconstruction_error, frobenius(M[k] - X[cfg.order[k]]));
  return out;
}

TiltFit find_tilt(const System& sys, const std::array<Vec2, 4>& U) {
  TiltFit out;
  std::array<Point, 4> p;
  for (int i = 0; i < 4; ++i) p[i] = sys.eval(U[i]);
  Eigen::Matrix<double, 3, 2> D;
  Eigen::Vector3d rhs;
  for (int i = 1; i < 4; ++i) {
    D(i - 1, 0) = U[i].x - U[0].x;
    D(i - 1, 1) = U[i].y - U[0].y;
    rhs(i - 1) = -(p[i].eta - p[0].eta);
  }
  const Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(D, Eigen::ComputeFullU |
                                                                 Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  if (sv(0) == 0 || sv(1) <= 1e-12 * sv(0)) {
    out.degenerate = true;
    out.line_point = U[0];
    out.line_dir = {svd.matrixV()(0, 0), svd.matrixV()(1, 0)};
    return out;
  }
  const Eigen::Vector2d c = svd.solve(rhs);
  out.c = {c(0), c(1)};
  std::array<double, 4> e, q;
  for (int i = 0; i < 4; ++i) {
    e[i] = p[i].eta + dot(out.c, U[i]);
    q[i] = p[i].q + dot(out.c, p[i].f);
  }
  for (int i = 0; i < 4; ++i) {
    out.eta_level += e[i] / 4;
    out.q_level += q[i] / 4;
  }
  for (int i = 0; i < 4; ++i) {
    out.eta_residual = std::max(out.eta_residual, std::abs(e[i] - out.eta_level));
    out.q_residual = std::max(out.q_residual, std::abs(q[i] - out.q_level));
  }
  return out;
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::reduced: return "reduced-level-set";
    case Strategy::random: return "random";
    default: return "local-descent";
  }
}

Strategy parse_strategy(const std::string& s) {
  if (s == "reduced-level-set" || s == "reduced") return Strategy::reduced;
  if (s == "random") return Strategy::random;
  if (s == "local-descent") return Strategy::local_descent;
  throw ConfigError("unknown search strategy '" + s + "'");
}

namespace {

struct Evaluation {
  bool sign_excluded = false;
  std::string excluded_by;
  bool structural = false;
  bool solved = false;
  bool near_rank_one = false;
  double residual = INFINITY;
  bool passed = false;
};

Evaluation evaluate_candidate(const System& sys, const Candidate& cand,
                              const TNSolveOptions& solver) {
  Evaluation ev;
  const System tsys = tilt(sys, cand.c);
  std::array<Mat32, 4> X;
  for (int i = 0; i < 4; ++i) X[i] = eval_G(tsys, cand.U[i]);
  const SignTest st = tn_sign_test(X);
  if (st.excluded) {
    ev.sign_excluded = true;
    ev.excluded_by = std::to_string(st.witness_rs[0]) + std::to_string(st.witness_rs[1]);
    return ev;
  }
  try {
    const TNSolveResult res = tn_solve(X, solver);
    ev.solved = true;
    ev.residual = res.residual;
    ev.near_rank_one = res.near_rank_one;
    ev.passed = res.success;
  } catch (const StructuralError&) {
    ev.structural = true;
  }
  return ev;
}

void merge(SearchReport& rep, const Candidate& cand, const Evaluation& ev) {
  ++rep.examined;
  if (ev.sign_excluded) {
    ++rep.sign_rejected;
    ++rep.excluded_by[ev.excluded_by];
    return;
  }
  if (ev.structural) {
    ++rep.structural_rejected;
    return;
  }
  ++rep.solver_attempts;
  rep.near_rank_one += ev.near_rank_one;
  rep.passed += ev.passed;
  if (ev.residual < rep.best_residual) {
    rep.best_residual = ev.residual;
    rep.best_candidate = cand;
  }
}

std::vector<Candidate> reduced_candidates(const System& sys, const SearchOptions& opt,
                                          const std::vector<Vec2>& tilts, long& curves,
                                          long& empty) {
  struct Job {
    Vec2 c;
    double C = 0;
    bool absolute = true;
  };
  std::vector<Job> jobs;
  for (Vec2 c : tilts) {
    if (!opt.levels.empty())
      for (double C : opt.levels) jobs.push_back({c, C, true});
    else
      for (double d : opt.level_offsets) jobs.push_back({c, d, false});
  }
  std::vector<std::vector<Candidate>> found(jobs.size());
  std::vector<int> status(jobs.size(), 0);  // 1 traced, 2 empty
  parallel_for(jobs.size(), [&](size_t idx) {
    const Job& job = jobs[idx];
    const System tsys = tilt(sys, job.c);
    double C = job.C;
    if (!job.absolute) C += minimize_eta(tsys, opt.level.window).second;
    LevelCurve curve;
    try {
      curve = trace_level_set(tsys, C, opt.level);
    } catch (const NumericalError&) {
      status[idx] = 2;
      return;
    }
    status[idx] = 1;
    const ExtremaReport ext = qtilde_extrema(tsys, curve);
    std::vector<double> qs;
    for (const auto& s : curve.samples) qs.push_back(tsys.q(s.U));
    std::vector<double> marks;
    for (const auto& cp : ext.points) marks.push_back(cp.value);
    if (!curve.closed) {
      marks.push_back(qs.front());
      marks.push_back(qs.back());
    }
    std::sort(marks.begin(), marks.end());
    const double qscale = std::max(1.0, std::abs(marks.empty() ? 0.0 : marks.back()));
    const double vtol = 1e-12 * qscale;
    std::vector<double> Ks;
    for (size_t k = 0; k < marks.size(); ++k) {
      if (k == 0 || marks[k] - marks[k - 1] > vtol) Ks.push_back(marks[k]);
      if (k + 1 < marks.size() && marks[k + 1] - marks[k] > vtol)
        for (int m = 1; m <= opt.values_per_band; ++m)
          Ks.push_back(marks[k] + (marks[k + 1] - marks[k]) * m / (opt.values_per_band + 1));
    }
    for (double K : Ks) {
      const auto pts = qtilde_level_points(tsys, curve, K, &ext, vtol);
      const size_t n = pts.size();
      if (n < 4) continue;
      for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
          for (size_t c = b + 1; c < n; ++c)
            for (size_t d = c + 1; d < n; ++d)
              found[idx].push_back({{pts[a], pts[b], pts[c], pts[d]}, job.c, C, K});
    }
  });
  std::vector<Candidate> all;
  for (size_t i = 0; i < jobs.size(); ++i) {
    curves += status[i] == 1;
    empty += status[i] == 2;
    for (auto& c : found[i]) {
      if (static_cast<long>(all.size()) >= opt.budget) break;
      all.push_back(c);
    }
  }
  return all;
}

bool sample_state(const System& sys, const Box& region, std::mt19937_64& rng, Vec2& U) {
  std::uniform_real_distribution<double> x(region.lo.x, region.hi.x), y(region.lo.y, region.hi.y);
  for (int t = 0; t < 100; ++t) {
    const double px = x(rng);
    U = {px, y(rng)};
    if (sys.contains(U)) return true;
  }
  return false;
}

// Random quadruple, tilted to a common eta~ level and projected onto it.
std::optional<Candidate> random_candidate(const System& sys, const Box& region,
                                          std::mt19937_64& rng) {
  Candidate cand;
  for (auto& U : cand.U)
    if (!sample_state(sys, region, rng, U)) return std::nullopt;
  const TiltFit fit = find_tilt(sys, cand.U);
  if (fit.degenerate) return std::nullopt;
  cand.c = fit.c;
  cand.C = fit.eta_level;
  const System tsys = tilt(sys, fit.c);
  for (auto& U : cand.U) {
    const auto P = project_to_level(tsys, U, fit.eta_level);
    if (!P) return std::nullopt;
    U = *P;
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (norm(cand.U[i] - cand.U[j]) < 1e-9) return std::nullopt;
  cand.K = fit.q_level;
  return cand;
}

struct DescentData {
  const System* sys;
  TNSolveOptions solver;
};

double descent_objective(const gsl_vector* v, void* params) {
  const auto* d = static_cast<const DescentData*>(params);
  std::array<Vec2, 4> U;
  for (int i = 0; i < 4; ++i) {
    U[i] = {gsl_vector_get(v, 2 * i), gsl_vector_get(v, 2 * i + 1)};
    if (!d->sys->contains(U[i])) return 1e6;
  }
  try {
    const TiltFit fit = find_tilt(*d->sys, U);
    if (fit.degenerate) return 1e6;
    const System tsys = tilt(*d->sys, fit.c);
    std::array<Mat32, 4> X;
    for (int i = 0; i < 4; ++i) X[i] = eval_G(tsys, U[i]);
    return tn_solve(X, d->solver).residual;
  } catch (const Error&) {
    return 1e6;
  }
}

}  // namespace

SearchReport t4_search(const System& sys, const SearchOptions& opt) {
  if (opt.budget < 1) throw ArgumentError("t4_search: budget must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  SearchReport rep;
  rep.system = sys.label();
  rep.strategy = opt.strategy;
  rep.seed = opt.seed;
  rep.budget = opt.budget;
  const std::vector<Vec2> tilts =
      opt.tilts.empty() ? [] {
        std::vector<Vec2> t;
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 5; ++j) t.push_back({-3.0 + 1.5 * i, -3.0 + 1.5 * j});
        return t;
      }()
                        : opt.tilts;
  auto candidate_solver = [&](size_t idx) {
    TNSolveOptions s = opt.solver;
    s.seed = splitmix64(opt.seed ^ (0xA5A5A5A5ull + idx));
    return s;
  };

  if (opt.strategy == Strategy::reduced) {
    const auto cands = reduced_candidates(sys, opt, tilts, rep.curves, rep.empty_levels);
    std::vector<Evaluation> ev(cands.size());
    parallel_for(cands.size(),
                 [&](size_t i) { ev[i] = evaluate_candidate(sys, cands[i], candidate_solver(i)); });
    for (size_t i = 0; i < cands.size(); ++i) merge(rep, cands[i], ev[i]);
  } else {
    const Box region = opt.region.intersect(sys.box());
    if (!region.bounded()) throw ArgumentError("t4_search: sampling region must be bounded");
    const size_t n = static_cast<size_t>(opt.budget);
    std::vector<std::optional<Candidate>> cands(n);
    std::vector<Evaluation> ev(n);
    parallel_for(n, [&](size_t i) {
      std::mt19937_64 rng(splitmix64(opt.seed ^ (0x9E3779B97F4A7C15ull * (i + 1))));
      cands[i] = random_candidate(sys, region, rng);
      if (!cands[i]) return;
      if (opt.strategy == Strategy::local_descent) {
        DescentData data{&sys, opt.solver};
        data.solver.starts = std::max(1, opt.solver.starts / 16);
        data.solver.seed = splitmix64(opt.seed + i);
        gsl_multimin_function fn{&descent_objective, 8, &data};
        gsl_vector* x = gsl_vector_alloc(8);
        gsl_vector* step = gsl_vector_alloc(8);
        for (int k = 0; k < 4; ++k) {
          gsl_vector_set(x, 2 * k, cands[i]->U[k].x);
          gsl_vector_set(x, 2 * k + 1, cands[i]->U[k].y);
        }
        gsl_vector_set_all(step, 0.1);
        gsl_multimin_fminimizer* m =
            gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 8);
        gsl_multimin_fminimizer_set(m, &fn, x, step);
        for (int it = 0; it < 150; ++it) {
          if (gsl_multimin_fminimizer_iterate(m)) break;
          if (gsl_multimin_fminimizer_size(m) < 1e-10) break;
        }
        std::array<Vec2, 4> U;
        for (int k = 0; k < 4; ++k)
          U[k] = {gsl_vector_get(m->x, 2 * k), gsl_vector_get(m->x, 2 * k + 1)};
        gsl_multimin_fminimizer_free(m);
        gsl_vector_free(step);
        gsl_vector_free(x);
        bool inside = true;
        for (Vec2 u : U) inside &= sys.contains(u);
        if (inside) {
          const TiltFit fit = find_tilt(sys, U);
          if (!fit.degenerate) {
            cands[i]->U = U;
            cands[i]->c = fit.c;
            cands[i]->C = fit.eta_level;
            cands[i]->K = fit.q_level;
          }
        }
      }
      try {
        ev[i] = evaluate_candidate(sys, *cands[i], candidate_solver(i));
      } catch (const ArgumentError&) {
        cands[i].reset();  // coincident states
      }
    });
    for (size_t i = 0; i < n; ++i) {
      if (!cands[i]) {
        ++rep.examined;
        ++rep.degenerate;
        continue;
      }
      merge(rep, *cands[i], ev[i]);
    }
  }
  if (opt.timing)
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
  return rep;
}

PlantedT4 planted_t4(const SystemSpec& spec) {
  const Vec2 a{spec.param("a1", 1.0), spec.param("a2", 0.4)};
  const double phi = spec.param("n_angle", 0.6);
  const Vec2 nv{std::cos(phi), std::sin(phi)};
  const double kappa = spec.param("kappa", 2.5);
  const double xq = spec.param("x", 0.7);
  const double q0 = spec.param("q0", 0.0);
  if (!(kappa > 1)) throw ConfigError("planted_t4: kappa must exceed 1");

  // T(B) = R B Q with R a quarter turn and Q = [[1, x], [0, -1]]; T^4 = I and
  // T - I is invertible, so P = (T - I)^{-1} C_1 closes the loop.
  using M2 = Eigen::Matrix2d;
  M2 R, Q;
  R << 0, -1, 1, 0;
  Q << 1, xq, 0, -1;
  auto T = [&](const M2& B) -> M2 { return R * B * Q; };
  M2 C1;
  C1 << a.x * nv.x, a.x * nv.y, a.y * nv.x, a.y * nv.y;
  Eigen::Matrix4d L;
  for (int k = 0; k < 4; ++k) {
    M2 E = M2::Zero();
    E(k / 2, k % 2) = 1;
    const M2 img = T(E) - E;
    for (int m = 0; m < 4; ++m) L(m, k) = img(m / 2, m % 2);
  }
  Eigen::Vector4d rhs;
  for (int m = 0; m < 4; ++m) rhs(m) = C1(m / 2, m % 2);
  const Eigen::Vector4d pv = L.fullPivLu().solve(rhs);
  M2 P;
  P << pv(0), pv(1), pv(2), pv(3);
  std::array<M2, 4> B;
  B[0] = P + kappa * C1;
  for (int i = 1; i < 4; ++i) B[i] = T(B[i - 1]);

  struct {
    std::array<Mat32, 4> X;
    std::array<Vec2, 4> U;
    double level = 0, q0 = 0;
  } out;
  for (int i = 0; i < 4; ++i) out.U[i] = {B[i](0, 0), B[i](1, 0)};
  const double rho = norm(out.U[0]);
  const double th = std::atan2(out.U[0].y, out.U[0].x);
  out.level = 0.5 * rho * rho;
  out.q0 = q0;
  for (int i = 0; i < 4; ++i) {
    Mat32& X = out.X[i];
    X(0, 0) = B[i](0, 0);
    X(0, 1) = B[i](0, 1);
    X(1, 0) = B[i](1, 0);
    X(1, 1) = B[i](1, 1);
    X(2, 0) = out.level;
    X(2, 1) = q0;
  }
  // f interpolates the flux entries in the basis 1, u1, u2, Re(z^2 e^{-2i th}).
  const double c2 = std::cos(2 * th), s2 = std::sin(2 * th);
  Eigen::Matrix4d V;
  for (int i = 0; i < 4; ++i) {
    const Vec2 U = out.U[i];
    V(i, 0) = 1;
    V(i, 1) = U.x;
    V(i, 2) = U.y;
    V(i, 3) = (U.x * U.x - U.y * U.y) * c2 + 2 * U.x * U.y * s2;
  }
  Eigen::Vector4d F1, F2;
  for (int i = 0; i < 4; ++i) {
    F1(i) = B[i](0, 1);
    F2(i) = B[i](1, 1);
  }
  const Eigen::Vector4d k1 = V.fullPivLu().solve(F1), k2 = V.fullPivLu().solve(F2);
  const double beta = 1.0 / (rho * rho);
  Model model = [=](const Jet& u1, const Jet& u2) {
    const Jet quad2 = (u1 * u1 - u2 * u2) * c2 + 2.0 * u1 * u2 * s2;
    const Jet f1 = k1(0) + k1(1) * u1 + k1(2) * u2 + k1(3) * quad2;
    const Jet f2 = k2(0) + k2(1) * u1 + k2(2) * u2 + k2(3) * quad2;
    const Jet eta = 0.5 * (u1 * u1 + u2 * u2);
    // Im(z^2 e^{-2i th}) = rho^2 sin(2 (theta - th)) on the circle
    const Jet q = q0 + beta * (2.0 * u1 * u2 * c2 - (u1 * u1 - u2 * u2) * s2);
    return Triple{f1, f2, eta, q};
  };
  SystemSpec s = spec;
  s.kind = "planted_t4";
  return PlantedT4{System("planted_t4", model, Box{}, s, {"u1", "u2"}), out.X, out.U, out.level,
                   out.q0};
}

}  // namespace hyperlaw
