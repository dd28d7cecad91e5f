#include "pumb/liecartan.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace pmb {

const char* nh_name(NHType t) {
  switch (t) {
    case NHType::Saddle: return "saddle";
    case NHType::Attractor: return "attractor";
    case NHType::Repeller: return "repeller";
    case NHType::SaddleNode: return "saddle-node";
    case NHType::Undetermined: return "undetermined";
  }
  return "?";
}

LieCartan::LieCartan(const MongeJet& jet, SimpleBranch branch, double fd_step)
    : jet_(jet), imm_(jet), branch_(branch), fd_step_(fd_step) {}

RestrictedSample LieCartan::restricted(const Vec3& u) const {
  FormsSample fs = compute_forms(imm_, u);
  PrincipalData pd = principal_solve(fs);
  double kappa = branch_ == SimpleBranch::Largest ? pd.k3 : pd.k1;
  PlaneFieldSample pf = plane_field(fs, kappa);
  return restrict_forms(fs, pf);
}

RestrictedDerivs LieCartan::derivs(const Vec3& u) const {
  RestrictedDerivs out;
  FormsSample fs = compute_forms(imm_, u);
  PrincipalData pd = principal_solve(fs);
  double kappa = branch_ == SimpleBranch::Largest ? pd.k3 : pd.k1;
  out.pf = plane_field(fs, kappa);
  out.rs = restrict_forms(fs, out.pf);
  const double h = fd_step_ * (1.0 + u.norm());
  for (int i = 0; i < 3; ++i) {
    auto lmn = [&](double step) -> Vec3 {
      Vec3 up = u, dn = u;
      up[i] += step;
      dn[i] -= step;
      RestrictedSample rp = restricted(up), rn = restricted(dn);
      return Vec3(rp.Lr - rn.Lr, rp.Mr - rn.Mr, rp.Nr - rn.Nr) / (2.0 * step);
    };
    Vec3 dfull = lmn(h), dhalf = lmn(h / 2.0);
    Vec3 rich = (4.0 * dhalf - dfull) / 3.0;
    out.dL[i] = rich[0];
    out.dM[i] = rich[1];
    out.dN[i] = rich[2];
  }
  return out;
}

double LieCartan::value(const LCState& s) const {
  RestrictedSample rs = restricted(s.u);
  if (s.chart == LCChart::P)
    return (rs.Lr * s.P + rs.Mr) * s.P + rs.Nr;
  return (rs.Nr * s.P + rs.Mr) * s.P + rs.Lr;
}

Eigen::Vector4d LieCartan::gradient(const LCState& s) const {
  RestrictedDerivs d = derivs(s.u);
  Eigen::Vector4d g;
  const double P = s.P;
  if (s.chart == LCChart::P) {
    for (int i = 0; i < 3; ++i) g[i] = (d.dL[i] * P + d.dM[i]) * P + d.dN[i];
    g[3] = 2.0 * d.rs.Lr * P + d.rs.Mr;
  } else {
    for (int i = 0; i < 3; ++i) g[i] = (d.dN[i] * P + d.dM[i]) * P + d.dL[i];
    g[3] = 2.0 * d.rs.Nr * P + d.rs.Mr;
  }
  return g;
}

LCField LieCartan::field(const LCState& s) const {
  RestrictedDerivs d = derivs(s.u);
  LCField out;
  const double P = s.P;
  if (s.chart == LCChart::P) {
    const double LP = 2.0 * d.rs.Lr * P + d.rs.Mr;
    const double w3 = d.pf.calU + d.pf.calV * P;
    double Lu[3];
    for (int i = 0; i < 3; ++i) Lu[i] = (d.dL[i] * P + d.dM[i]) * P + d.dN[i];
    out.X1 = LP;
    out.X2 = P * LP;
    out.X3 = w3 * LP;
    out.X4 = -(Lu[0] + P * Lu[1] + w3 * Lu[2]);
  } else {
    const double LQ = 2.0 * d.rs.Nr * P + d.rs.Mr;
    const double w3 = d.pf.calU * P + d.pf.calV;
    double Lu[3];
    for (int i = 0; i < 3; ++i) Lu[i] = (d.dN[i] * P + d.dM[i]) * P + d.dL[i];
    out.X1 = P * LQ;
    out.X2 = LQ;
    out.X3 = w3 * LQ;
    out.X4 = -(P * Lu[0] + Lu[1] + w3 * Lu[2]);
  }
  return out;
}

FiberCubic LieCartan::fiber_cubic(const Vec3& u) const {
  RestrictedDerivs d = derivs(u);
  FiberCubic c;
  c.a3 = -(d.dL[1] + d.pf.calV * d.dL[2]);
  c.a2 = -(d.dL[0] + d.dM[1] + d.pf.calU * d.dL[2] + d.pf.calV * d.dM[2]);
  c.a1 = -(d.dM[0] + d.dN[1] + d.pf.calU * d.dM[2] + d.pf.calV * d.dN[2]);
  c.a0 = -(d.dN[0] + d.pf.calU * d.dN[2]);
  return c;
}

Vec3 LieCartan::pu_curve_point(double t, bool param_by_u1, Vec3 seed_hint) const {
  // Newton on (Lr, Mr) = 0 in the two coordinates transversal to the arc,
  // walking the arc parameter in stages when the seed is far from the target.
  int i0 = param_by_u1 ? 1 : 0;  // unknown indices
  int i1 = param_by_u1 ? 2 : 1;
  int fixed = param_by_u1 ? 0 : 2;
  double t_from = seed_hint[fixed];
  for (int refine = 0; refine < 4; ++refine) {
    Vec3 u = seed_hint;
    int stages =
        std::max(1, static_cast<int>(std::ceil(std::abs(t - t_from) / 0.01))) << refine;
    bool failed = false;
    for (int stage = 1; stage <= stages && !failed; ++stage) {
      double tcur = t_from + (t - t_from) * stage / stages;
      u[fixed] = tcur;
      const double h = 1e-6 * (1.0 + std::abs(tcur));
      bool done = false;
      for (int it = 0; it < 60 && !done; ++it) {
        RestrictedSample rs = restricted(u);
        Eigen::Vector2d F(rs.Lr, rs.Mr);
        double fscale =
            std::max({std::abs(rs.er), std::abs(rs.fr), std::abs(rs.gr), 1.0});
        Eigen::Matrix2d J;
        for (int col = 0; col < 2; ++col) {
          int vi = col == 0 ? i0 : i1;
          Vec3 up = u, dn = u;
          up[vi] += h;
          dn[vi] -= h;
          RestrictedSample rp = restricted(up), rn = restricted(dn);
          J(0, col) = (rp.Lr - rn.Lr) / (2.0 * h);
          J(1, col) = (rp.Mr - rn.Mr) / (2.0 * h);
        }
        if (std::abs(J.determinant()) < 1e-10 * (J.norm() * J.norm() + 1e-30))
          throw Error(Err::JacobianRankDrop, "pu_curve_point: pivot degenerate");
        Eigen::Vector2d delta = J.partialPivLu().solve(-F);
        double cap = 0.02 * (1.0 + std::abs(tcur));
        if (delta.norm() > cap) delta *= cap / delta.norm();
        u[i0] += delta[0];
        u[i1] += delta[1];
        done = F.norm() < 1e-14 * fscale && delta.norm() < 1e-12 * (1.0 + u.norm());
      }
      failed = !done;
    }
    if (!failed) return u;
  }
  throw Error(Err::NewtonDiverged, "pu_curve_point: no convergence");
}

SpectrumResult LieCartan::spectrum_at(const LCState& s, double jac_step) const {
  Mat4 DX;
  const double hu = jac_step * (1.0 + s.u.norm());
  const double hp = jac_step * (1.0 + std::abs(s.P));
  for (int i = 0; i < 4; ++i) {
    auto col = [&](double step) -> Eigen::Vector4d {
      LCState up = s, dn = s;
      if (i < 3) {
        up.u[i] += step;
        dn.u[i] -= step;
      } else {
        up.P += step;
        dn.P -= step;
      }
      LCField fp = field(up), fn = field(dn);
      return Eigen::Vector4d(fp.X1 - fn.X1, fp.X2 - fn.X2, fp.X3 - fn.X3,
                             fp.X4 - fn.X4) /
             (2.0 * step);
    };
    double h = i < 3 ? hu : hp;
    Eigen::Vector4d full = col(h), half = col(h / 2.0);
    DX.col(i) = (4.0 * half - full) / 3.0;
  }
  Eigen::EigenSolver<Mat4> es(DX);
  SpectrumResult out;
  std::array<std::complex<double>, 4> ev;
  for (int i = 0; i < 4; ++i) ev[i] = es.eigenvalues()[i];
  std::sort(ev.begin(), ev.end(),
            [](auto x, auto y) { return std::abs(x) < std::abs(y); });
  out.all = ev;
  double scale = DX.norm();
  out.zero_residual = std::max(std::abs(ev[0]), std::abs(ev[1])) / (scale + 1e-300);
  if (out.zero_residual > 1e-4)
    throw Error(Err::SpectralTolerance,
                "branch_spectrum: structural zeros not separated");
  double l3 = ev[2].real(), l4 = ev[3].real();
  if (l3 > l4) std::swap(l3, l4);
  out.lambda3 = l3;
  out.lambda4 = l4;
  double big = std::max(std::abs(l3), std::abs(l4));
  bool c3 = std::abs(ev[2].imag()) > 1e-8 * big;
  bool c4 = std::abs(ev[3].imag()) > 1e-8 * big;
  if (c3 || c4) {
    out.type = NHType::Undetermined;
  } else if (std::min(std::abs(l3), std::abs(l4)) < 1e-3 * big) {
    out.type = NHType::Undetermined;  // one eigenvalue at/near zero
  } else if (l3 < 0.0 && l4 < 0.0) {
    out.type = NHType::Attractor;
  } else if (l3 > 0.0 && l4 > 0.0) {
    out.type = NHType::Repeller;
  } else {
    out.type = NHType::Saddle;
  }
  return out;
}

namespace {

int expected_branches(PUKind kind) {
  switch (kind) {
    case PUKind::D1: return 1;
    case PUKind::D2:
    case PUKind::D3: return 3;
    case PUKind::D12: return 2;
    case PUKind::D23: return 3;
    default: return 0;
  }
}

NHType branch_type_from_samples(const LieCartan& lc, SingularBranch& br) {
  // sample spectra on both ends and the middle; saddle-node when the small
  // eigenvalue changes sign along the branch
  if (br.samples.empty()) return NHType::Undetermined;
  std::vector<double> small_eigs;
  std::vector<NHType> types;
  std::size_t n = br.samples.size();
  for (std::size_t idx : {std::size_t(0), n / 2, n - 1}) {
    try {
      SpectrumResult sr = lc.spectrum_at(br.samples[idx].state);
      types.push_back(sr.type);
      small_eigs.push_back(std::abs(sr.lambda3) < std::abs(sr.lambda4) ? sr.lambda3
                                                                       : sr.lambda4);
    } catch (const Error&) {
      types.push_back(NHType::Undetermined);
      small_eigs.push_back(0.0);
    }
  }
  if (small_eigs.size() >= 2 && small_eigs.front() * small_eigs.back() < 0.0) {
    // transversal zero crossing of one eigenvalue
    return NHType::SaddleNode;
  }
  // when the middle sample is hyperbolic, use it; else majority of ends
  for (NHType t : {types[1], types[0], types[2]})
    if (t != NHType::Undetermined) return t;
  return NHType::Undetermined;
}

}  // namespace

std::vector<SingularBranch> find_singular_branches(const MongeJet& jet,
                                                   double arc_range, int n_samples) {
  PUClassification cls = classify_point(jet);
  int expected = expected_branches(cls.kind);
  if (expected == 0)
    throw Error(Err::InvalidArg,
                std::string("find_singular_branches: origin classifies as ") +
                    kind_name(cls.kind));
  LieCartan lc(jet);
  const bool by_u1 = cls.kind == PUKind::D23;
  if (n_samples < 5) n_samples = 5;
  if (n_samples % 2 == 0) ++n_samples;

  // roots of the fiber cubic at the origin
  FiberCubic c0 = lc.fiber_cubic(Vec3::Zero());
  CubicRoots roots = solve_cubic(c0.a3, c0.a2, c0.a1, c0.a0);
  int root_count_with_mult = 0;
  for (int i = 0; i < roots.count; ++i) root_count_with_mult += roots.multiplicity[i];

  std::vector<SingularBranch> out;
  // center-out ordering so the Newton hints chain from the origin
  auto arc_ts = [&]() {
    std::vector<double> ts{0.0};
    int half = (n_samples - 1) / 2;
    for (int i = 1; i <= half; ++i) {
      ts.push_back(arc_range * i / half);
      ts.push_back(-arc_range * i / half);
    }
    return ts;
  };
  auto sort_samples = [](SingularBranch& br) {
    std::sort(br.samples.begin(), br.samples.end(),
              [](const BranchSample& x, const BranchSample& y) { return x.t < y.t; });
  };

  if (cls.kind == PUKind::D12) {
    // zeta1: simple root at P = c/b, continued across the arc;
    // zeta2: the branch through the double root at P = 0, tangent to the
    // fiber, parametrized by the slope.
    if (roots.count < 1)
      throw Error(Err::BranchCountMismatch, "D12: no fiber roots at origin");
    double pzeta1 = jet.c / jet.b;
    SingularBranch z1;
    z1.label = "zeta1";
    z1.root_at_origin = pzeta1;
    Vec3 hint_pos = Vec3::Zero(), hint_neg = Vec3::Zero();
    for (double t : arc_ts()) {
      Vec3& hint = t >= 0 ? hint_pos : hint_neg;
      Vec3 u;
      try {
        u = lc.pu_curve_point(t, false, hint);
      } catch (const Error&) {
        if (std::abs(t) > 0.3 * arc_range) continue;
        throw;
      }
      hint = u;
      FiberCubic ct = lc.fiber_cubic(u);
      double P = pzeta1;
      for (int it = 0; it < 30; ++it) {
        double f = ct.eval(P), df = ct.deriv(P);
        if (std::abs(df) < 1e-14) break;
        P -= f / df;
      }
      z1.samples.push_back({t, LCState{u, P, LCChart::P}});
    }
    sort_samples(z1);
    z1.nh_type = branch_type_from_samples(lc, z1);
    out.push_back(z1);

    SingularBranch z2;
    z2.label = "zeta2";
    z2.root_at_origin = 0.0;
    z2.parametrized_by_slope = true;
    // solve C(t, P) = 0 for t given the slope P (the branch is a parabola
    // tangent to the fiber at the origin)
    double prev_t = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      double P = -arc_range + 2.0 * arc_range * i / (n_samples - 1);
      double t = prev_t;
      bool ok = false;
      Vec3 hint2 = Vec3::Zero();
      for (int it = 0; it < 40; ++it) {
        Vec3 u = lc.pu_curve_point(t, false, hint2);
        hint2 = u;
        FiberCubic ct = lc.fiber_cubic(u);
        double f = ct.eval(P);
        const double dh = 1e-6 * (1.0 + std::abs(t));
        Vec3 up = lc.pu_curve_point(t + dh, false, hint2);
        Vec3 dn = lc.pu_curve_point(t - dh, false, hint2);
        double df = (lc.fiber_cubic(up).eval(P) - lc.fiber_cubic(dn).eval(P)) / (2 * dh);
        if (std::abs(df) < 1e-12) break;
        double step = -f / df;
        t += step;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(t))) {
          ok = true;
          break;
        }
      }
      if (!ok) continue;
      Vec3 u = lc.pu_curve_point(t, false, hint2);
      z2.samples.push_back({P, LCState{u, P, LCChart::P}});
      prev_t = t;
    }
    if (z2.samples.size() < 3)
      throw Error(Err::BranchCountMismatch, "D12: zeta2 continuation failed");
    z2.nh_type = branch_type_from_samples(lc, z2);
    out.push_back(z2);
  } else {
    if (roots.count != expected)
      throw Error(Err::BranchCountMismatch,
                  "fiber root count " + std::to_string(roots.count) +
                      " does not match class " + kind_name(cls.kind));
    for (int r = 0; r < roots.count; ++r) {
      SingularBranch br;
      br.label = "gamma" + std::to_string(r + 1);
      br.root_at_origin = roots.r[r];
      br.param_by_u1 = by_u1;
      Vec3 hint_pos = Vec3::Zero(), hint_neg = Vec3::Zero();
      double p_pos = br.root_at_origin, p_neg = br.root_at_origin;
      for (double t : arc_ts()) {
        Vec3& hint = t >= 0 ? hint_pos : hint_neg;
        double& pstart = t >= 0 ? p_pos : p_neg;
        Vec3 u;
        try {
          u = lc.pu_curve_point(t, by_u1, hint);
        } catch (const Error&) {
          if (std::abs(t) > 0.3 * arc_range) continue;  // fold beyond validity
          throw;
        }
        hint = u;
        FiberCubic ct = lc.fiber_cubic(u);
        double P = pstart;
        for (int it = 0; it < 30; ++it) {
          double f = ct.eval(P), df = ct.deriv(P);
          if (std::abs(df) < 1e-14) break;
          P -= f / df;
        }
        pstart = P;
        br.samples.push_back({t, LCState{u, P, LCChart::P}});
      }
      sort_samples(br);
      br.nh_type = branch_type_from_samples(lc, br);
      out.push_back(br);
    }
    std::sort(out.begin(), out.end(), [](const SingularBranch& x, const SingularBranch& y) {
      return x.root_at_origin < y.root_at_origin;
    });
    // index so gamma1 is the branch through P = 0
    int i0 = 0;
    for (int i = 0; i < static_cast<int>(out.size()); ++i)
      if (std::abs(out[i].root_at_origin) < std::abs(out[i0].root_at_origin)) i0 = i;
    for (int i = 0, g = 2; i < static_cast<int>(out.size()); ++i) {
      if (i == i0) {
        out[i].label = "gamma1";
      } else {
        out[i].label = "gamma" + std::to_string(g++);
      }
    }
  }
  return out;
}

SpectrumResult branch_spectrum(const LieCartan& lc, const SingularBranch& branch,
                               double t) {
  if (branch.samples.empty())
    throw Error(Err::InvalidArg, "branch_spectrum: empty branch");
  // nearest sample, then refine the state at the exact arc parameter
  const BranchSample* best = &branch.samples.front();
  for (const auto& s : branch.samples)
    if (std::abs(s.t - t) < std::abs(best->t - t)) best = &s;
  LCState state = best->state;
  if (!branch.parametrized_by_slope) {
    try {
      Vec3 u = lc.pu_curve_point(t, branch.param_by_u1, best->state.u);
      FiberCubic ct = lc.fiber_cubic(u);
      double P = best->state.P;
      for (int it = 0; it < 30; ++it) {
        double f = ct.eval(P), df = ct.deriv(P);
        if (std::abs(df) < 1e-14) break;
        P -= f / df;
      }
      state = LCState{u, P, LCChart::P};
    } catch (const Error&) {
      // arc parameter beyond the sampled validity: report the nearest sample
    }
  }
  return lc.spectrum_at(state);
}

std::vector<DiscriminantSample> branch_discriminant(const MongeJet& jet,
                                                    const std::vector<double>& ts) {
  PUClassification cls = classify_point(jet);
  LieCartan lc(jet);
  const bool by_u1 = cls.kind == PUKind::D23;
  std::vector<DiscriminantSample> out;
  Vec3 hint = Vec3::Zero();
  for (double t : ts) {
    DiscriminantSample ds;
    ds.t = t;
    Vec3 u = lc.pu_curve_point(t, by_u1, hint);
    hint = u;
    ds.cubic = lc.fiber_cubic(u);
    CubicDiscriminant cd =
        cubic_discriminant(ds.cubic.a3, ds.cubic.a2, ds.cubic.a1, ds.cubic.a0);
    ds.monic = cd.monic;
    ds.darbouxian = cd.darbouxian;
    ds.cardano = cd.cardano;
    out.push_back(ds);
  }
  return out;
}

LCFieldOracle lc_field_oracle(const MongeJet& j, const LCState& s) {
  LCFieldOracle out;
  const double u1 = s.u[0], u2 = s.u[1], u3 = s.u[2];
  const double dk = j.k - j.k3;
  const double k3p = j.k * j.k * j.k;
  out.X1 = (-2*j.b*u2 - 2*j.q111*u3) * s.P + (-j.a + j.b)*u1 + j.c*u2
           + (-j.q201 + j.q021)*u3;
  out.cubic.a3 = j.b + (j.C - k3p + (j.q111*j.q111 + j.q201*j.q021)/dk)*u1
                 + (j.D + 3*j.q111*j.q021/dk)*u2
                 + (j.Q121 + (2*j.q111*j.q012 + j.q102*j.q021)/dk)*u3;
  out.cubic.a2 = -j.c + (-j.D + 2*j.B + (6*j.q111*j.q201 - 3*j.q111*j.q021)/dk)*u1
                 + (-j.E + k3p + 2*j.C
                    + (4*j.q111*j.q111 - 3*j.q021*j.q021 + 2*j.q201*j.q021)/dk)*u2
                 + (-j.Q031 + 2*j.Q211*(2*j.q201*j.q012 + 4*j.q102*j.q111
                                        - 3*j.q012*j.q021)/dk)*u3;
  out.cubic.a1 = j.a - 2*j.b
                 + (-2*j.C + j.A - k3p
                    + (-2*j.q201*j.q021 - 4*j.q111*j.q111 + 3*j.q201*j.q201)/dk)*u1
                 + (-2*j.D + j.B + (3*j.q111*j.q201 - 6*j.q111*j.q021)/dk)*u2
                 + (-2*j.Q121 + j.Q301
                    + (3*j.q102*j.q201 - 2*j.q102*j.q021 - 4*j.q111*j.q012)/dk)*u3;
  out.cubic.a0 = (-j.B - 3*j.q111*j.q201/dk)*u1
                 + (-j.C + k3p - (2*j.q111*j.q111 + j.q201*j.q021)/dk)*u2
                 + (-j.Q211 - (j.q201*j.q012 + 2*j.q102*j.q111)/dk)*u3;
  return out;
}

}  // namespace pmb
