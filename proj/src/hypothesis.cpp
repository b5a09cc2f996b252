#include "hyperlaw/hypothesis.hpp"

#include <cmath>

#include "hyperlaw/errors.hpp"
#include "hyperlaw/parallel.hpp"

namespace hyperlaw {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified-on-samples";
    case Verdict::failed: return "failed-at-point";
    case Verdict::indeterminate: return "indeterminate";
    default: return "not-checked";
  }
}

std::vector<Vec2> HypothesisOptions::default_tilts() {
  std::vector<Vec2> out;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out.push_back({-3.0 + 1.5 * i, -3.0 + 1.5 * j});
  return out;
}

namespace {

struct Sample {
  Vec2 U;
  bool hyperbolic = false;
  std::array<double, 2> lambda{}, gnl{}, sj{};
  double lambda_scale = 1;
  bool convex = false;
};

void fail(ItemVerdict& v, Vec2 at, std::string detail) {
  v.status = Verdict::failed;
  v.witness = at;
  v.detail = std::move(detail);
}

std::optional<Vec2> catalog_r1(const System& sys, Vec2 U, bool& broken) {
  try {
    return eigenframe(sys, U, Orientation::catalog).r[0];
  } catch (const HyperbolicityError&) {
    broken = true;
    return std::nullopt;
  }
}

}  // namespace

std::optional<Vec2> hyperbolicity_witness(const System& sys, const Box& region, int m) {
  const auto pts = sample_grid(region, m);
  std::vector<std::optional<Vec2>> r1(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    bool broken = false;
    r1[i] = catalog_r1(sys, pts[i], broken);
    if (broken) return pts[i];
  }
  // an eigenvalue crossing shows up as a jump of r1 between neighbours
  auto probe = [&](size_t a, size_t b) -> std::optional<Vec2> {
    if (std::abs(dot(*r1[a], *r1[b])) >= 0.5) return std::nullopt;
    const Vec2 A = pts[a], B = pts[b];
    double lo = 0, hi = 1;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      bool broken = false;
      const auto r = catalog_r1(sys, A + mid * (B - A), broken);
      if (broken) return A + mid * (B - A);
      (std::abs(dot(*r, *r1[a])) >= 0.5 ? lo : hi) = mid;
    }
    const Vec2 W = A + 0.5 * (lo + hi) * (B - A);
    const Point p = sys.eval(W);
    const Mat22& D = p.Df;
    const double disc = (D(0, 0) - D(1, 1)) * (D(0, 0) - D(1, 1)) + 4 * D(0, 1) * D(1, 0);
    const double scale = std::abs(D(0, 0)) + std::abs(D(0, 1)) + std::abs(D(1, 0)) + std::abs(D(1, 1));
    if (disc <= 0 || std::sqrt(disc) <= 1e-6 * std::max(scale, 1e-300)) return W;
    return std::nullopt;
  };
  // sample_grid is row-major in the first coordinate's index
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const size_t k = static_cast<size_t>(i) * m + j;
      if (j + 1 < m)
        if (auto w = probe(k, k + 1)) return w;
      if (i + 1 < m)
        if (auto w = probe(k, k + m)) return w;
    }
  return std::nullopt;
}

HypothesisReport hypothesis_report(const System& sys, const Box& region,
                                   const std::vector<Vec2>& tilts,
                                   const std::vector<double>& levels,
                                   const HypothesisOptions& opt) {
  if (tilts.empty() || levels.empty()) throw ArgumentError("hypothesis_report: empty grid");
  HypothesisReport rep;
  rep.system = sys.label();
  rep.region = region;
  rep.tilts = tilts;
  rep.levels = levels;
  const char* names1[5] = {"H1(i)", "H1(ii)", "H1(iii)", "H1(iv)", "H1(v)"};
  const char* names2[5] = {"H2(i)", "H2(ii)", "H2(iii)", "H2(iv)", "H2(v)"};
  for (int k = 0; k < 5; ++k) {
    rep.h1[k].item = names1[k];
    rep.h2[k].item = names2[k];
  }
  rep.h1[4].sampled_only = rep.h2[4].sampled_only = true;

  const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(opt.n_samples))));
  const auto pts = sample_grid(region, m);
  for (Vec2 U : pts)
    if (!sys.contains(U)) throw DomainError("hypothesis_report: region leaves the domain");

  std::vector<Sample> S(pts.size());
  parallel_for(pts.size(), [&](size_t i) {
    Sample& s = S[i];
    s.U = pts[i];
    const Point p = sys.eval(s.U);
    s.convex = p.hess_eta(0, 0) > 0 && det(p.hess_eta) > 0;
    try {
      const EigenFrame fr = eigenframe(p);
      s.hyperbolic = true;
      s.lambda = fr.lambda;
      s.gnl = fr.gnl;
      s.sj = smoller_johnson(p, fr);
      s.lambda_scale = std::max({1.0, std::abs(fr.lambda[0]), std::abs(fr.lambda[1])});
    } catch (const HyperbolicityError&) {
    }
  });

  std::optional<Vec2> nonhyp;
  for (const auto& s : S)
    if (!s.hyperbolic) {
      nonhyp = s.U;
      break;
    }
  if (!nonhyp) nonhyp = hyperbolicity_witness(sys, region, m);

  // H1(i): strictly hyperbolic, genuinely nonlinear, Smoller-Johnson
  {
    ItemVerdict& v = rep.h1[0];
    v.status = Verdict::verified;
    int sj_sign = 0;
    if (nonhyp) fail(v, *nonhyp, "not strictly hyperbolic");
    for (const auto& s : S) {
      if (v.status == Verdict::failed) break;
      for (int k = 0; k < 2; ++k)
        if (std::abs(s.gnl[k]) <= 1e-9 * s.lambda_scale) {
          fail(v, s.U, "genuine nonlinearity fails in family " + std::to_string(k + 1));
          break;
        }
      if (v.status == Verdict::failed) break;
      for (int k = 0; k < 2; ++k) {
        const int sg = s.sj[k] > 1e-9 ? 1 : (s.sj[k] < -1e-9 ? -1 : 0);
        if (sg == 0 || (sj_sign != 0 && sg != sj_sign)) {
          fail(v, s.U, "Smoller-Johnson quantity vanishes or changes sign");
          break;
        }
        sj_sign = sg;
      }
    }
    if (v.status == Verdict::verified && sj_sign < 0) {
      rep.sj_flipped = true;
      v.detail = "Smoller-Johnson holds with flipped sign";
    }
  }

  // H1(ii): sector condition
  rep.sector = sector_search(sys, region, opt.n_samples);
  {
    ItemVerdict& v = rep.h1[1];
    if (rep.sector.found) {
      v.status = Verdict::verified;
    } else {
      fail(v, rep.sector.hyperbolicity_failure ? *rep.sector.hyperbolicity_failure
                                               : rep.sector.witness.value_or(region.lo),
           rep.sector.reason);
      const std::string& kind = sys.spec().kind;
      if (kind == "gamma_law" || kind == "isentropic_euler" || kind == "shallow_water")
        rep.recommendations.push_back(
            "sector condition fails in Eulerian variables; analyze the Lagrangian transform "
            "(hyperlaw transform --to lagrangian)");
    }
  }

  // H1(iii): lambda1 <= 0 <= lambda2
  {
    ItemVerdict& v = rep.h1[2];
    if (nonhyp) {
      fail(v, *nonhyp, "no real distinct characteristic speeds");
    } else {
      v.status = Verdict::verified;
      for (const auto& s : S)
        if (s.lambda[0] > 1e-12 * s.lambda_scale || s.lambda[1] < -1e-12 * s.lambda_scale) {
          fail(v, s.U, "characteristic speeds do not straddle zero");
          break;
        }
    }
  }

  // H1(iv) and H2(iv): strict convexity of eta
  for (auto* v : {&rep.h1[3], &rep.h2[3]}) {
    v->status = Verdict::verified;
    for (const auto& s : S)
      if (!s.convex) {
        fail(*v, s.U, "Hessian of eta is not positive definite");
        break;
      }
  }

  // Level-set items, one job per (tilt, level).
  struct LevelJob {
    bool empty = false, clipped = false;
    std::optional<std::string> error;
    Vec2 error_at;
    int extrema = 0;
    bool plateau = false, degenerate = false;
    Vec2 first_extremum;
    double overlap = 0, scale = 1;
    Vec2 overlap_at;
    bool decomposition_failed = false;
    Vec2 decomposition_at;
    std::string decomposition_reason;
  };
  const size_t nl = levels.size();
  std::vector<LevelJob> jobs(tilts.size() * nl);
  parallel_for(jobs.size(), [&](size_t idx) {
    LevelJob& job = jobs[idx];
    const System tsys = tilt(sys, tilts[idx / nl]);
    const double C = levels[idx % nl];
    LevelCurve curve;
    try {
      curve = trace_level_set(tsys, C, opt.level);
    } catch (const EmptyLevelError&) {
      job.empty = true;
      return;
    } catch (const ContinuationError& e) {
      job.error = e.what();
      job.error_at = e.last;
      return;
    } catch (const HyperbolicityError& e) {
      job.error = e.what();
      job.error_at = e.point;
      return;
    }
    job.clipped = curve.clipped;
    const ExtremaReport ext = qtilde_extrema(tsys, curve);
    job.extrema = static_cast<int>(ext.points.size());
    job.plateau = ext.plateau;
    for (const auto& cp : ext.points) job.degenerate |= cp.kind == CriticalKind::degenerate;
    if (!ext.points.empty()) job.first_extremum = ext.points.front().U;
    if (!rep.sector.found) return;
    double qlo = INFINITY, qhi = -INFINITY;
    for (const auto& s : curve.samples) {
      const double q = tsys.q(s.U);
      qlo = std::min(qlo, q);
      qhi = std::max(qhi, q);
    }
    job.scale = std::max(1.0, qhi - qlo);
    try {
      const LevelDecomposition d = decompose(tsys, curve, rep.sector.w1, rep.sector.w2, &ext);
      job.overlap = adjacent_overlap(d);
      job.overlap_at = d.boundaries.empty() ? curve.samples.front().U : d.boundaries.front().U;
    } catch (const DecompositionError& e) {
      job.decomposition_failed = true;
      job.decomposition_at = e.point;
      job.decomposition_reason = e.what();
    } catch (const HyperbolicityError& e) {
      job.decomposition_failed = true;
      job.decomposition_at = e.point;
      job.decomposition_reason = e.what();
    }
  });

  auto mark = [&](ItemVerdict& v, Verdict status, Vec2 at, size_t idx, std::string detail) {
    if (v.status == Verdict::failed) return;
    if (status == Verdict::indeterminate && v.status == Verdict::indeterminate) return;
    v.status = status;
    v.witness = at;
    v.witness_tilt = tilts[idx / nl];
    v.witness_level = levels[idx % nl];
    v.detail = std::move(detail);
  };
  ItemVerdict& h1v = rep.h1[4];
  ItemVerdict& h2v = rep.h2[4];
  h2v.status = Verdict::verified;
  h1v.status = rep.sector.found ? Verdict::verified : Verdict::not_checked;
  if (!rep.sector.found) h1v.detail = "requires sector vectors";
  for (size_t idx = 0; idx < jobs.size(); ++idx) {
    const LevelJob& job = jobs[idx];
    if (job.empty) {
      ++rep.levels_empty;
      continue;
    }
    if (job.error) {
      mark(h2v, Verdict::indeterminate, job.error_at, idx, "level set trace failed: " + *job.error);
      if (rep.sector.found) mark(h1v, Verdict::indeterminate, job.error_at, idx, "level set trace failed");
      continue;
    }
    ++rep.levels_traced;
    rep.levels_clipped += job.clipped;
    const int limit = job.clipped ? 3 : 4;
    if (job.extrema > limit)
      mark(h2v, Verdict::failed, job.first_extremum, idx,
           std::to_string(job.extrema) + " critical points on a " +
               (job.clipped ? "clipped" : "bounded") + " level set");
    else if (job.plateau || job.degenerate)
      mark(h2v, Verdict::indeterminate, job.first_extremum, idx, "degenerate critical point");
    if (!rep.sector.found) continue;
    if (job.decomposition_failed)
      mark(h1v, Verdict::failed, job.decomposition_at, idx, job.decomposition_reason);
    else if (job.overlap >= 1e-6 * job.scale)
      mark(h1v, Verdict::failed, job.overlap_at, idx, "adjacent arcs have overlapping q~ images");
    else if (job.overlap > 1e-9 * job.scale)
      mark(h1v, Verdict::indeterminate, job.overlap_at, idx,
           "adjacent q~ images touch within tolerance");
  }
  if (rep.levels_clipped > 0 && h2v.status == Verdict::verified)
    h2v.detail = "clipped level sets checked on the visible portion";

  // H2(i)-(iii) from traced shock curves
  ItemVerdict& g = rep.h2[0];
  ItemVerdict& liu = rep.h2[1];
  ItemVerdict& np = rep.h2[2];
  if (nonhyp) {
    fail(g, *nonhyp, "strict hyperbolicity precondition fails");
    liu.detail = np.detail = "requires traced shock curves";
    return rep;
  }
  const auto bases = sample_grid(region, opt.shock_bases);
  struct ShockJob {
    std::optional<std::string> error;
    Vec2 error_at;
    LiuLaxReport ll;
    bool monotone_coordinate = false;
  };
  std::vector<ShockJob> sj(bases.size() * 2);
  parallel_for(sj.size(), [&](size_t idx) {
    ShockJob& job = sj[idx];
    const Vec2 U0 = bases[idx / 2];
    TraceOptions to;
    to.s_min = -opt.shock_span;
    to.s_max = opt.shock_span;
    try {
      const ShockCurve c = trace_hugoniot(sys, U0, static_cast<int>(idx % 2) + 1, to);
      job.ll = liu_lax_check(sys, c);
      for (int k = 0; k < 2 && !job.monotone_coordinate; ++k) {
        int dir = 0;
        bool ok = true;
        for (size_t i = 1; i < c.samples.size() && ok; ++i) {
          const double d = k == 0 ? c.samples[i].U.x - c.samples[i - 1].U.x
                                  : c.samples[i].U.y - c.samples[i - 1].U.y;
          const int sg = d > 0 ? 1 : (d < 0 ? -1 : 0);
          if (sg == 0 || (dir != 0 && sg != dir)) ok = false;
          dir = sg;
        }
        job.monotone_coordinate = ok;
      }
    } catch (const NumericalError& e) {
      job.error = e.what();
      job.error_at = U0;
    }
  });
  g.status = liu.status = np.status = Verdict::verified;
  for (size_t idx = 0; idx < sj.size(); ++idx) {
    const ShockJob& job = sj[idx];
    const Vec2 U0 = bases[idx / 2];
    const std::string fam = " (family " + std::to_string(idx % 2 + 1) + ")";
    if (job.error) {
      if (g.status != Verdict::failed) fail(g, job.error_at, "shock curve trace failed" + fam);
      liu.status = np.status = Verdict::not_checked;
      continue;
    }
    if (liu.status == Verdict::verified && !job.ll.liu)
      fail(liu, job.ll.extrema.empty() ? U0 : job.ll.extrema.front().U,
           "shock speed is not monotone" + fam);
    if (np.status == Verdict::verified) {
      if (!job.ll.liu)
        fail(np, U0, "Liu condition fails" + fam);
      else if (!job.ll.lax_e)
        fail(np, job.ll.lax_witness.value_or(U0), "Lax E-condition fails" + fam);
      else if (!job.monotone_coordinate)
        fail(np, U0, "no monotone coordinate along the shock curve" + fam);
    }
  }
  if (g.status == Verdict::verified) g.detail = "sampled base points";
  return rep;
}

}  // namespace hyperlaw
