#include "pumb/tracer.hpp"

#include <algorithm>
#include <cmath>

#include "pumb/numeric.hpp"

namespace pmb {

const char* foliation_name(Foliation f) {
  switch (f) {
    case Foliation::F1: return "F1";
    case Foliation::F2: return "F2";
    case Foliation::F3: return "F3";
  }
  return "?";
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Boundary: return "boundary";
    case Termination::NearS: return "near-S";
    case Termination::MaxLength: return "max-length";
    case Termination::ChartSwitchLimit: return "chart-switch-limit";
    case Termination::Stationary: return "stationary";
  }
  return "?";
}

namespace {

struct DirSample {
  Vec3 dir;       // unit (euclidean) chart direction
  double gap12;
  double gap23;
};

// Field direction of the requested foliation at u, oriented along ref.
DirSample foliation_direction(const JetImmersion& imm, const Vec3& u, Foliation which,
                              SimpleBranch branch, const Vec3* ref) {
  FormsSample fs = compute_forms(imm, u);
  PrincipalData pd = principal_solve(fs);
  DirSample out;
  out.gap12 = branch == SimpleBranch::Largest ? pd.gap12 : pd.gap23;
  out.gap23 = branch == SimpleBranch::Largest ? pd.gap23 : pd.gap12;
  double kappa = branch == SimpleBranch::Largest ? pd.k3 : pd.k1;
  PlaneFieldSample pf = plane_field(fs, kappa);
  Vec3 v;
  if (which == Foliation::F3) {
    v = Vec3(pf.U1, pf.V1, pf.W1);
  } else {
    RestrictedSample rs = restrict_forms(fs, pf);
    SlopeRoots roots = slope_quadratic_roots(rs);
    // collect candidate directions with their restricted normal curvature
    struct Cand {
      Vec3 dir;
      double kr;
    };
    std::vector<Cand> cands;
    auto kr_of = [&](double P) {
      return (rs.er + (2.0 * rs.fr + rs.gr * P) * P) /
             (rs.Er + (2.0 * rs.Fr + rs.Gr * P) * P);
    };
    for (int i = 0; i < roots.count; ++i)
      cands.push_back({lift_slope(pf, roots.P[i]), kr_of(roots.P[i])});
    if (roots.root_at_infinity)
      cands.push_back({lift_slope_infinity(pf), rs.gr / rs.Gr});
    if (cands.size() < 2)
      throw Error(Err::SeedOnSingularSet,
                  "trace: direction field not resolved (double root)");
    std::sort(cands.begin(), cands.end(),
              [](const Cand& x, const Cand& y) { return x.kr < y.kr; });
    v = which == Foliation::F1 ? cands.front().dir : cands.back().dir;
  }
  // unit g-length, then euclidean normalization for stepping
  double glen = std::sqrt(v.dot(fs.g * v));
  if (glen == 0.0) throw Error(Err::SeedOnSingularSet, "trace: zero direction");
  v /= glen;
  v.normalize();
  if (ref && v.dot(*ref) < 0.0) v = -v;
  out.dir = v;
  return out;
}

}  // namespace

Polyline trace_principal_line(const MongeJet& jet, const Vec3& seed, Foliation which,
                              const TraceParams& params) {
  JetImmersion imm(jet);
  const double eps_umb =
      params.eps_umb > 0 ? params.eps_umb : default_eps_umb(jet.k3);
  Polyline out;
  out.foliation = foliation_name(which);

  Vec3 ref = Vec3::Zero();
  DirSample d0 = foliation_direction(imm, seed, which, params.branch, nullptr);
  if (which != Foliation::F3 && d0.gap12 < eps_umb)
    throw Error(Err::SeedOnSingularSet, "trace: seed on the partially umbilic set");
  ref = params.time_direction >= 0 ? d0.dir : Vec3(-d0.dir);

  Vec3 u = seed;
  double h = params.h0;
  double arclen = 0.0;
  out.points.push_back(u);
  out.dirs.push_back(ref);
  if (params.embed) out.embedded.push_back(imm.position(u));
  Termination term = Termination::MaxLength;

  while (arclen < params.max_arclen) {
    DirSample here = foliation_direction(imm, u, which, params.branch, &ref);
    if (which != Foliation::F3 && here.gap12 < 10.0 * eps_umb) {
      term = Termination::NearS;
      break;
    }
    if (u.cwiseAbs().maxCoeff() > params.box_radius) {
      term = Termination::Boundary;
      break;
    }
    double hcap = std::min(params.hmax, params.max_arclen - arclen);
    if (which != Foliation::F3) hcap = std::min(hcap, std::max(1e-6, here.gap12));
    h = std::min(h, hcap);
    bool stepped = false;
    while (!stepped) {
      if (h < params.hmin) break;
      try {
        auto rhs = [&](const Vec3& x) {
          return foliation_direction(imm, x, which, params.branch, &ref).dir;
        };
        RkResult<3> r = rk45_step<3>(rhs, u, h, params.atol, params.rtol);
        if (r.error <= 1.0) {
          u = r.y;
          arclen += h;
          DirSample dn = foliation_direction(imm, u, which, params.branch, &ref);
          ref = dn.dir;
          out.points.push_back(u);
          out.dirs.push_back(ref);
          if (params.embed) out.embedded.push_back(imm.position(u));
          stepped = true;
          h *= std::clamp(0.9 * std::pow(r.error + 1e-12, -0.2), 0.3, 4.0);
        } else {
          h *= std::max(0.2, 0.9 * std::pow(r.error, -0.25));
        }
      } catch (const Error&) {
        h *= 0.5;  // stepped into a degenerate zone; retreat
      }
    }
    if (!stepped) {
      // could not advance: treat as having reached the singular set when the
      // gap is collapsing, otherwise report the underflow
      if (which != Foliation::F3 && here.gap12 < 1e3 * eps_umb) {
        term = Termination::NearS;
        break;
      }
      throw Error(Err::StepUnderflow, "trace_principal_line: step underflow");
    }
  }
  out.termination = term;
  out.arclength = arclen;
  return out;
}

namespace {

using V4 = Eigen::Matrix<double, 4, 1>;

LCState project_to_surface(const LieCartan& lc, LCState s, double tol, int maxit) {
  for (int it = 0; it < maxit; ++it) {
    double val = lc.value(s);
    RestrictedSample rs = lc.restricted(s.u);
    double scale = std::max({std::abs(rs.er), std::abs(rs.fr), std::abs(rs.gr), 1.0}) *
                   (1.0 + s.P * s.P);
    if (std::abs(val) <= tol * scale) return s;
    Eigen::Vector4d grad = lc.gradient(s);
    double g2 = grad.squaredNorm();
    if (g2 < 1e-30) break;
    Eigen::Vector4d delta = -(val / g2) * grad;
    s.u += delta.head<3>();
    s.P += delta[3];
  }
  throw Error(Err::ProjectionFailed, "trace_lc_orbit: projection onto L failed");
}

}  // namespace

Polyline trace_lc_orbit(const MongeJet& jet, const LCState& state0,
                        const TraceParams& params, int max_chart_switches) {
  LieCartan lc(jet, params.branch);
  Polyline out;
  out.foliation = "LC-orbit";
  LCState s = project_to_surface(lc, state0, 1e-10, 12);
  const double sgn = params.time_direction >= 0 ? 1.0 : -1.0;

  auto record = [&](const LCState& st) {
    out.points.push_back(st.u);
    double Pval = st.chart == LCChart::P
                      ? st.P
                      : (st.P != 0.0 ? 1.0 / st.P : std::numeric_limits<double>::infinity());
    out.slope.push_back(Pval);
  };
  record(s);

  double h = params.h0;
  double arclen = 0.0;
  double proj_len = 0.0;
  int switches = 0;
  Termination term = Termination::MaxLength;
  while (arclen < params.max_arclen &&
         (params.max_proj_arclen <= 0 || proj_len < params.max_proj_arclen)) {
    if (s.u.cwiseAbs().maxCoeff() > params.box_radius) {
      term = Termination::Boundary;
      break;
    }
    LCField f0 = lc.field(s);
    double fnorm = std::sqrt(f0.X1 * f0.X1 + f0.X2 * f0.X2 + f0.X3 * f0.X3 +
                             f0.X4 * f0.X4);
    RestrictedSample rs0 = lc.restricted(s.u);
    double fscale = std::max({std::abs(rs0.er), std::abs(rs0.fr), std::abs(rs0.gr), 1.0});
    if (fnorm < 1e-11 * fscale) {
      term = Termination::Stationary;
      break;
    }
    auto rhs = [&](const V4& y) {
      LCState st{Vec3(y[0], y[1], y[2]), y[3], s.chart};
      LCField f = lc.field(st);
      V4 v;
      v << f.X1, f.X2, f.X3, f.X4;
      double n = v.norm();
      return V4((sgn / std::max(n, 1e-300)) * v);
    };
    V4 y;
    y << s.u[0], s.u[1], s.u[2], s.P;
    bool stepped = false;
    while (!stepped) {
      if (h < params.hmin) break;
      RkResult<4> r = rk45_step<4>(rhs, y, h, params.atol, params.rtol);
      if (r.error <= 1.0) {
        LCState sn{Vec3(r.y[0], r.y[1], r.y[2]), r.y[3], s.chart};
        try {
          sn = project_to_surface(lc, sn, 1e-10, 6);
        } catch (const Error&) {
          h *= 0.5;
          continue;
        }
        proj_len += (sn.u - s.u).norm();
        s = sn;
        arclen += h;
        stepped = true;
        h *= std::clamp(0.9 * std::pow(r.error + 1e-12, -0.2), 0.3, 4.0);
        h = std::min(h, params.hmax);
      } else {
        h *= std::max(0.2, 0.9 * std::pow(r.error, -0.25));
      }
    }
    if (!stepped) {
      term = Termination::Stationary;
      break;
    }
    if (std::abs(s.P) > 10.0) {
      if (++switches > max_chart_switches) {
        term = Termination::ChartSwitchLimit;
        break;
      }
      s.P = 1.0 / s.P;
      s.chart = s.chart == LCChart::P ? LCChart::Q : LCChart::P;
    }
    record(s);
  }
  out.termination = term;
  out.arclength = arclen;
  return out;
}

LeafFamily trace_separatrix_family(const MongeJet& jet, const SingularBranch& branch,
                                   int n_leaves, const SeparatrixParams& params) {
  if (branch.nh_type == NHType::Undetermined)
    throw Error(Err::NotNormallyHyperbolic,
                "trace_separatrix_family: branch not normally hyperbolic");
  LieCartan lc(jet, params.trace.branch);
  LeafFamily fam;
  fam.branch_label = branch.label;
  fam.partial = branch.nh_type == NHType::SaddleNode;

  if (branch.samples.empty() || n_leaves < 1)
    throw Error(Err::InvalidArg, "trace_separatrix_family: no samples");
  const std::size_t ns = branch.samples.size();
  for (int leaf = 0; leaf < n_leaves; ++leaf) {
    std::size_t idx = ns == 1 ? 0 : leaf * (ns - 1) / std::max(1, n_leaves - 1);
    const LCState& st = branch.samples[idx].state;
    // Jacobian eigenvectors at the branch point
    Mat4 DX;
    const double hu = 1e-5 * (1.0 + st.u.norm());
    for (int i = 0; i < 4; ++i) {
      LCState up = st, dn = st;
      if (i < 3) {
        up.u[i] += hu;
        dn.u[i] -= hu;
      } else {
        up.P += hu;
        dn.P -= hu;
      }
      LCField fp = lc.field(up), fn = lc.field(dn);
      DX.col(i) = Eigen::Vector4d(fp.X1 - fn.X1, fp.X2 - fn.X2, fp.X3 - fn.X3,
                                  fp.X4 - fn.X4) /
                  (2.0 * hu);
    }
    Eigen::EigenSolver<Mat4> es(DX);
    // pick the transversal (non-fiber) eigenvector of the hyperbolic pair
    int pick = -1;
    double best = 0.0;
    for (int i = 0; i < 4; ++i) {
      double lam = es.eigenvalues()[i].real();
      if (std::abs(es.eigenvalues()[i].imag()) > 1e-6 * (std::abs(lam) + 1e-12))
        continue;
      Eigen::Vector4d v = es.eigenvectors().col(i).real();
      double unorm = v.head<3>().norm() / (v.norm() + 1e-300);
      double score = std::abs(lam) * unorm;
      if (unorm > 0.1 && score > best) {
        best = score;
        pick = i;
      }
    }
    if (pick < 0)
      throw Error(Err::NotNormallyHyperbolic,
                  "trace_separatrix_family: no transversal hyperbolic direction");
    double lam = es.eigenvalues()[pick].real();
    Eigen::Vector4d v = es.eigenvectors().col(pick).real().normalized();
    double delta = params.displacement * (1.0 + st.u.norm());
    int side = leaf % 2 == 0 ? +1 : -1;
    LCState seed = st;
    seed.u += side * delta * v.head<3>();
    seed.P += side * delta * v[3];
    TraceParams tp = params.trace;
    tp.time_direction = lam > 0 ? +1 : -1;  // integrate away from the branch
    Polyline orbit = trace_lc_orbit(jet, seed, tp);
    std::reverse(orbit.points.begin(), orbit.points.end());
    std::reverse(orbit.slope.begin(), orbit.slope.end());
    orbit.foliation = "separatrix-leaf";
    fam.leaves.push_back(std::move(orbit));
    fam.sides.push_back(side);
  }
  return fam;
}

namespace {

double dist_to_polyline(const Vec3& x, const std::vector<Vec3>& poly) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    Vec3 a = poly[i], b = poly[i + 1];
    Vec3 ab = b - a;
    double t = ab.squaredNorm() > 0 ? std::clamp((x - a).dot(ab) / ab.squaredNorm(),
                                                 0.0, 1.0)
                                    : 0.0;
    best = std::min(best, (x - (a + t * ab)).norm());
  }
  if (poly.size() == 1) best = std::min(best, (x - poly[0]).norm());
  return best;
}

}  // namespace

SectorCensus sector_census(const MongeJet& jet, const Vec3& p_on_S, double radius,
                           Foliation which, const CensusParams& params) {
  JetImmersion imm(jet);
  SectorCensus out;
  FormsSample fs = compute_forms(imm, p_on_S);
  PrincipalData pd = principal_solve(fs);
  double kappa = params.trace.branch == SimpleBranch::Largest ? pd.k3 : pd.k1;
  PlaneFieldSample pf = plane_field(fs, kappa);

  // local S polyline through p (for distance checks) and candidate rays
  std::vector<SingularBranch> branches = find_singular_branches(jet, 3.0 * radius, 13);
  std::vector<Vec3> spoly;
  for (const auto& bs : branches.front().samples) spoly.push_back(bs.state.u);

  // candidate separatrix slopes: the fiber-cubic roots over p
  LieCartan lc(jet, params.trace.branch);
  FiberCubic cub = lc.fiber_cubic(p_on_S);
  CubicRoots roots = solve_cubic(cub.a3, cub.a2, cub.a1, cub.a0);

  Vec3 ex = pd.e1.normalized(), ey = pd.e2.normalized();
  auto seed_at = [&](double ang) {
    return (p_on_S + radius * (std::cos(ang) * ex + std::sin(ang) * ey)).eval();
  };

  TraceParams tp = params.trace;
  tp.box_radius = std::max(tp.box_radius, 4.0 * radius + p_on_S.cwiseAbs().maxCoeff());
  tp.max_arclen = 30.0 * radius;
  tp.hmax = radius / 4.0;

  auto min_dist_along = [&](const Vec3& seed, int dir) {
    TraceParams t2 = tp;
    t2.time_direction = dir;
    double dmin = std::numeric_limits<double>::infinity();
    bool near_s = false;
    try {
      Polyline pl = trace_principal_line(jet, seed, which, t2);
      near_s = pl.termination == Termination::NearS;
      for (std::size_t i = 0; i < pl.points.size(); ++i) {
        Vec3 q = pl.points[i];
        if ((q - p_on_S).norm() > 2.5 * radius) break;
        dmin = std::min(dmin, dist_to_polyline(q, spoly));
      }
    } catch (const Error&) {
      near_s = true;  // stepped onto the singular set
      dmin = 0.0;
    }
    return std::pair<double, bool>(dmin, near_s);
  };

  // ring classification
  const int n = params.ring_seeds;
  out.ring_flags.assign(n, 0);
  out.ring_angles.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double ang = 2.0 * M_PI * i / n;
    out.ring_angles[i] = ang;
    Vec3 seed = seed_at(ang);
    auto [d1, n1] = min_dist_along(seed, +1);
    auto [d2, n2] = min_dist_along(seed, -1);
    bool asym = n1 || n2 || std::min(d1, d2) < params.approach_dist;
    out.ring_flags[i] = asym ? 1 : 0;
  }

  // candidate rays: both signed directions of every lifted root slope
  for (int r = 0; r < roots.count; ++r) {
    Vec3 v = lift_slope(pf, roots.r[r]);
    double vx = v.dot(ex), vy = v.dot(ey);
    for (int sgn = 0; sgn < 2; ++sgn) {
      double ang = std::atan2(sgn ? -vy : vy, sgn ? -vx : vx);
      Vec3 seed = seed_at(ang);
      auto [d1, n1] = min_dist_along(seed, +1);
      auto [d2, n2] = min_dist_along(seed, -1);
      SectorCensus::Ray ray;
      ray.angle = ang;
      ray.slope = roots.r[r];
      ray.confirmed = n1 || n2 || std::min(d1, d2) < params.approach_dist;
      out.rays.push_back(ray);
      if (ray.confirmed) ++out.separatrix_rays;
    }
  }

  // wedge arcs: maximal circular runs of asymptotic ring seeds (length >= 2)
  std::vector<std::pair<int, int>> runs;  // (start, length) circular
  {
    int i = 0;
    while (i < n && out.ring_flags[i] == 1) ++i;
    if (i == n) {
      runs.push_back({0, n});
    } else {
      int start = -1;
      for (int kk = 0; kk <= n; ++kk) {
        int idx = (i + kk) % n;
        bool on = kk < n && out.ring_flags[idx] == 1;
        if (on && start < 0) start = (i + kk) % n;
        if (!on && start >= 0) {
          int len = (i + kk) % n - start;
          if (len < 0) len += n;
          runs.push_back({start, len});
          start = -1;
        }
      }
    }
  }
  for (auto& run : runs)
    if (run.second >= 2) ++out.wedge_sectors;

  // hyperbolic sectors: gaps between boundary marks (confirmed rays mod pi
  // collapse to their two signed angles; wedge runs act as boundaries too)
  std::vector<double> marks;
  for (const auto& ray : out.rays)
    if (ray.confirmed) marks.push_back(std::fmod(ray.angle + 2.0 * M_PI, 2.0 * M_PI));
  for (auto& run : runs)
    if (run.second >= 2)
      marks.push_back(out.ring_angles[(run.first + run.second / 2) % n]);
  std::sort(marks.begin(), marks.end());
  // merge marks within one angular bin
  std::vector<double> merged;
  for (double m : marks) {
    if (merged.empty() ||
        std::min(m - merged.back(), 2.0 * M_PI - (m - merged.back())) >
            params.angular_bin)
      merged.push_back(m);
  }
  if (merged.size() >= 2 &&
      (2.0 * M_PI - (merged.back() - merged.front())) <= params.angular_bin)
    merged.pop_back();
  if (!merged.empty()) {
    int gaps = 0;
    int nm = static_cast<int>(merged.size());
    for (int i = 0; i < nm; ++i) {
      double lo = merged[i];
      double hi = i + 1 < nm ? merged[i + 1] : merged[0] + 2.0 * M_PI;
      // a gap is hyperbolic when its interior ring seeds pass by
      bool has_passby = false;
      for (int j = 0; j < n; ++j) {
        double ang = out.ring_angles[j];
        double a2 = ang < lo ? ang + 2.0 * M_PI : ang;
        if (a2 > lo + params.angular_bin && a2 < hi - params.angular_bin &&
            out.ring_flags[j] == 0)
          has_passby = true;
      }
      if (has_passby) ++gaps;
    }
    out.hyperbolic_sectors = gaps;
  }

  // asymptotic clusters: confirmed ray directions mod pi, plus wedges
  std::vector<double> mod_pi;
  for (const auto& ray : out.rays) {
    if (!ray.confirmed) continue;
    double ang = std::fmod(ray.angle + 2.0 * M_PI, M_PI);
    bool dup = false;
    for (double m : mod_pi)
      if (std::min(std::abs(m - ang), M_PI - std::abs(m - ang)) < params.angular_bin)
        dup = true;
    if (!dup) mod_pi.push_back(ang);
  }
  out.asymptotic_clusters = static_cast<int>(mod_pi.size()) + out.wedge_sectors;
  return out;
}

}  // namespace pmb
