#include "pumb/classify.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "pumb/numeric.hpp"

namespace pmb {

const char* kind_name(PUKind k) {
  switch (k) {
    case PUKind::D1: return "D1";
    case PUKind::D2: return "D2";
    case PUKind::D3: return "D3";
    case PUKind::D12: return "D12";
    case PUKind::D23: return "D23";
    case PUKind::Umbilic: return "Umbilic";
    case PUKind::NonGeneric: return "NonGeneric";
  }
  return "?";
}

double chi12(const MongeJet& j) {
  const double k = j.k, k3 = j.k3, b = j.b, c = j.c;
  return (k - k3) * ((b*j.q021 - b*j.q201 - c*j.q111)*j.B - b*j.q111*j.C + b*b*j.Q211)
         + j.q012*j.q201*b*b
         + (2*j.q102*b*b - b*k*k*k*k3 + b*k*k*k*k)*j.q111
         - 3*c*j.q111*j.q111*j.q201 - 3*b*j.q111*j.q201*j.q201
         - 2*b*j.q111*j.q111*j.q111 + 2*b*j.q111*j.q021*j.q201;
}

namespace {

double chi12_scale(const MongeJet& j) {
  const double k = std::abs(j.k), k3 = std::abs(j.k3), b = std::abs(j.b),
               c = std::abs(j.c);
  const double q021 = std::abs(j.q021), q201 = std::abs(j.q201),
               q111 = std::abs(j.q111), q012 = std::abs(j.q012),
               q102 = std::abs(j.q102);
  return (k + k3) * ((b*q021 + b*q201 + c*q111)*std::abs(j.B) + b*q111*std::abs(j.C)
                     + b*b*std::abs(j.Q211))
         + q012*q201*b*b + (2*q102*b*b + b*k*k*k*k3 + b*k*k*k*k)*q111
         + 3*c*q111*q111*q201 + 3*b*q111*q201*q201 + 2*b*q111*q111*q111
         + 2*b*q111*q021*q201;
}

}  // namespace

double chi23(const MongeJet& j) {
  const double k = j.k, k3 = j.k3, b = j.b, c = j.c;
  return (k - k3) * (b*j.A + c*j.B - b*j.C - 2*b*k*k*k)
         + (3*j.q201*j.q201 - j.q201*j.q021 - 2*j.q111*j.q111)*b
         + 3*j.q111*j.q201*c;
}

namespace {

double chi23_scale(const MongeJet& j) {
  const double k = std::abs(j.k), k3 = std::abs(j.k3), b = std::abs(j.b),
               c = std::abs(j.c);
  return (k + k3) * (b*std::abs(j.A) + c*std::abs(j.B) + b*std::abs(j.C) + 2*b*k*k*k)
         + (3*j.q201*j.q201 + std::abs(j.q201*j.q021) + 2*j.q111*j.q111)*b
         + 3*std::abs(j.q111*j.q201)*c;
}

}  // namespace

double chi12star(const MongeJet& j) {
  const double k = j.k, k3 = j.k3, b = j.b, c = j.c;
  const double q021 = j.q021, q201 = j.q201, q111 = j.q111, q012 = j.q012,
               q102 = j.q102;
  const double b2 = b*b, b3 = b2*b, b4 = b3*b, c2 = c*c, c3 = c2*c, c4 = c3*c;
  const double chi11 =
      (k - k3) * (16*b3*c*(-b*q201 + b*q021 - q111*c)*j.A
                  - 4*b2*(5*c3*q111 - 8*b3*q201 + 8*b3*q021 - 4*b2*c*q111
                          - 4*b*c2*q021 + 4*b*c2*q201)*j.B
                  + (4*b*(8*b2 - 2*c2)*(b2 + c2)*q111 - b*c*(8*b2 - c2)*q021
                     + b*c*(8*b2 - c2)*q201)*j.C
                  + c*(-c4*q111 + 8*b3*c*q201 + 32*b4*q111 - 8*b3*c*q021
                       + 12*b2*c2*q111)*j.D
                  + 2*b*c2*q111*(4*b2 + c2)*j.E
                  - b*c*(4*b2 + c2)*(8*b2 - c2)*j.Q121
                  - 4*b2*(4*b2 + c2)*(2*b2 - c2)*j.Q211
                  - 2*b2*c2*(4*b2 + c2)*j.Q031
                  + 4*b3*c*(4*b2 + c2)*j.Q301);
  const double k3p = k * k * k;
  const double chi22 =
      4*b2*c*k3p*(4*b2 + c2)*(k - k3)*q201
      - 4*b2*c*k3p*(4*b2 + c2)*(k - k3)*q021
      - 2*b*k3p*(4*b2 - c2)*(4*b2 + c2)*(k - k3)*q111
      - 4*b2*(4*b2 + c2)*(2*b2 - c2)*q201*q012
      - 6*b2*c2*(4*b2 + c2)*q012*q021
      - b*c*(4*b2 + c2)*(8*b2 - c2)*q021*q102
      - 8*b2*(4*b2 + c2)*(2*b2 - c2)*q111*q102
      + 12*b3*c*(4*b2 + c2)*q102*q201
      - 2*b*c*(4*b2 + c2)*(8*b2 - c2)*q111*q012
      - 48*b4*c*q201*q201*q201
      + 4*b2*c*(-17*c2 + 28*b2)*q111*q111*q201
      + c*(44*b2*c2 + 32*b4 - 3*c4)*q111*q111*q021
      + 16*b*(2*b - c)*(2*b + c)*(b2 + c2)*q111*q111*q111
      - 8*b*(8*b4 - 12*b2*c2 + c4)*q021*q201*q111
      + 96*b3*(b - c)*(b + c)*q201*q201*q111
      + 6*b*c4*q021*q021*q111
      - 4*b2*c*(8*b2 - c2)*q201*q021*q021
      + 4*b2*c*(-c2 + 20*b2)*q201*q201*q021;
  return chi11 + chi22;
}

namespace {

// Conditioning scale for the chi12* != 0 test: the same polynomial with every
// additive term replaced by its absolute value.
double chi12star_scale(const MongeJet& j) {
  const double k = std::abs(j.k), k3 = std::abs(j.k3), b = std::abs(j.b),
               c = std::abs(j.c);
  const double q021 = std::abs(j.q021), q201 = std::abs(j.q201),
               q111 = std::abs(j.q111), q012 = std::abs(j.q012),
               q102 = std::abs(j.q102);
  const double b2 = b*b, b3 = b2*b, b4 = b3*b, c2 = c*c, c3 = c2*c, c4 = c3*c;
  const double s11 =
      (k + k3) * (16*b3*c*(b*q201 + b*q021 + q111*c)*std::abs(j.A)
                  + 4*b2*(5*c3*q111 + 8*b3*q201 + 8*b3*q021 + 4*b2*c*q111
                          + 4*b*c2*q021 + 4*b*c2*q201)*std::abs(j.B)
                  + (4*b*(8*b2 + 2*c2)*(b2 + c2)*q111 + b*c*(8*b2 + c2)*q021
                     + b*c*(8*b2 + c2)*q201)*std::abs(j.C)
                  + c*(c4*q111 + 8*b3*c*q201 + 32*b4*q111 + 8*b3*c*q021
                       + 12*b2*c2*q111)*std::abs(j.D)
                  + 2*b*c2*q111*(4*b2 + c2)*std::abs(j.E)
                  + b*c*(4*b2 + c2)*(8*b2 + c2)*std::abs(j.Q121)
                  + 4*b2*(4*b2 + c2)*(2*b2 + c2)*std::abs(j.Q211)
                  + 2*b2*c2*(4*b2 + c2)*std::abs(j.Q031)
                  + 4*b3*c*(4*b2 + c2)*std::abs(j.Q301));
  const double k3p = k * k * k;
  const double s22 =
      4*b2*c*k3p*(4*b2 + c2)*(k + k3)*(q201 + q021)
      + 2*b*k3p*(4*b2 + c2)*(4*b2 + c2)*(k + k3)*q111
      + 4*b2*(4*b2 + c2)*(2*b2 + c2)*q201*q012
      + 6*b2*c2*(4*b2 + c2)*q012*q021
      + b*c*(4*b2 + c2)*(8*b2 + c2)*(q021*q102 + 2*q111*q012)
      + 8*b2*(4*b2 + c2)*(2*b2 + c2)*q111*q102
      + 12*b3*c*(4*b2 + c2)*q102*q201
      + 48*b4*c*q201*q201*q201
      + 4*b2*c*(17*c2 + 28*b2)*q111*q111*q201
      + c*(44*b2*c2 + 32*b4 + 3*c4)*q111*q111*q021
      + 16*b*(2*b + c)*(2*b + c)*(b2 + c2)*q111*q111*q111
      + 8*b*(8*b4 + 12*b2*c2 + c4)*q021*q201*q111
      + 96*b3*(b + c)*(b + c)*q201*q201*q111
      + 6*b*c4*q021*q021*q111
      + 4*b2*c*(8*b2 + c2)*q201*q021*q021
      + 4*b2*c*(c2 + 20*b2)*q201*q201*q021;
  return s11 + s22 + 1e-30;
}

}  // namespace

PUClassification classify_point(const MongeJet& jet, double tol) {
  PUClassification out;
  const double cubic_scale = std::max({std::abs(jet.a), std::abs(jet.b),
                                       std::abs(jet.c), std::abs(jet.d)});
  if (std::abs(jet.d) > 1e-7 * std::max(cubic_scale, 1e-30))
    throw Error(Err::InvalidArg, "classify_point: jet not adapted (d != 0)");

  const double a = jet.a, b = jet.b, c = jet.c;
  out.T = b * (b - a);
  out.chi12 = chi12(jet);
  out.chi12star = chi12star(jet);
  out.chi23 = chi23(jet);
  out.d23_regularity = b * (jet.q201 - jet.q021) + c * jet.q111;
  if (b != 0.0) {
    const double r = a / b, half = c / (2.0 * b);
    out.disc = -(half * half - r + 2.0) * (2.0 * r - 4.0) * (2.0 * r - 4.0);
  }

  const double eps_umb = 1e-8 * (1.0 + std::max(std::abs(jet.k), std::abs(jet.k3)));
  if (std::abs(jet.k - jet.k3) <= eps_umb) {
    out.kind = PUKind::Umbilic;
    return out;
  }
  if (cubic_scale == 0.0) {
    out.kind = PUKind::NonGeneric;
    out.reason = "all cubic coefficients vanish";
    return out;
  }
  const double s = cubic_scale;
  out.margin_ab = std::abs(a - b) / s;
  out.margin_a2b = std::abs(a - 2.0 * b) / s;
  out.margin_disc = std::abs(c * c - 4.0 * b * (a - 2.0 * b)) / (s * s);

  const double qscale = std::max({std::abs(jet.q201), std::abs(jet.q021),
                                  std::abs(jet.q111), 1e-30});
  if (out.margin_ab <= tol) {
    // b = a: the Darbouxian transversality T = b(b-a) fails
    if (std::abs(b) <= tol * s) {
      out.kind = PUKind::NonGeneric;
      out.reason = "T fails: b = 0";
      return out;
    }
    if (std::abs(out.d23_regularity) <=
        tol * (std::abs(b) + std::abs(c)) * qscale) {
      out.kind = PUKind::NonGeneric;
      out.reason = "b(q201-q021)+c q111 vanishes at a = b";
      return out;
    }
    if (std::abs(out.chi23) <= tol * (chi23_scale(jet) + 1e-30)) {
      out.kind = PUKind::NonGeneric;
      out.reason = "chi23 vanishes at a = b";
      return out;
    }
    out.kind = PUKind::D23;
    return out;
  }
  if (std::abs(b) <= tol * s) {
    out.kind = PUKind::NonGeneric;
    out.reason = "T fails: b = 0";
    return out;
  }
  if (out.margin_a2b <= tol) {
    if (std::abs(c) <= tol * s) {
      out.kind = PUKind::NonGeneric;
      out.reason = "c = 0 at a = 2b";
      return out;
    }
    if (std::abs(out.chi12) <= tol * (chi12_scale(jet) + 1e-30)) {
      out.kind = PUKind::NonGeneric;
      out.reason = "chi12 vanishes at a = 2b";
      return out;
    }
    out.kind = PUKind::D12;
    return out;
  }
  if (out.margin_disc <= tol) {
    if (std::abs(out.chi12star) <= tol * chi12star_scale(jet)) {
      out.kind = PUKind::NonGeneric;
      out.reason = "chi12* vanishes on the discriminant boundary";
      return out;
    }
    out.kind = PUKind::D12;
    return out;
  }
  const double r = a / b, thr = c * c / (4.0 * b * b) + 2.0;
  if (r > thr) {
    out.kind = PUKind::D1;
  } else if (r > 1.0) {
    out.kind = PUKind::D2;
  } else {
    out.kind = PUKind::D3;  // r < 1 (r = 1 was handled as a = b)
  }
  return out;
}

namespace {

struct PipelineEval {
  RestrictedSample rs;
  PlaneFieldSample pf;
  PrincipalData pd;
};

PipelineEval eval_pipeline(const ImmersionField& imm, const Vec3& u, SimpleBranch br) {
  PipelineEval pe;
  FormsSample fs = compute_forms(imm, u);
  pe.pd = principal_solve(fs);
  double kappa = br == SimpleBranch::Largest ? pe.pd.k3 : pe.pd.k1;
  pe.pf = plane_field(fs, kappa);
  pe.rs = restrict_forms(fs, pe.pf);
  return pe;
}

Eigen::Vector2d lm_at(const ImmersionField& imm, const Vec3& u, SimpleBranch br) {
  PipelineEval pe = eval_pipeline(imm, u, br);
  return {pe.rs.Lr, pe.rs.Mr};
}

Eigen::Matrix<double, 2, 3> lm_jacobian(const ImmersionField& imm, const Vec3& u,
                                        SimpleBranch br) {
  Eigen::Matrix<double, 2, 3> J;
  const double h = 1e-6 * (1.0 + u.norm());
  for (int i = 0; i < 3; ++i) {
    Vec3 up = u, dn = u;
    up[i] += h;
    dn[i] -= h;
    J.col(i) = (lm_at(imm, up, br) - lm_at(imm, dn, br)) / (2.0 * h);
  }
  return J;
}

// Newton solve of (Lr,Mr)=0 with an optional arclength constraint plane.
Vec3 newton_correct(const ImmersionField& imm, Vec3 u, SimpleBranch br,
                    const Vec3* plane_normal, const Vec3* plane_point,
                    double tol, int maxit, bool* rank_drop = nullptr) {
  if (rank_drop) *rank_drop = false;
  for (int it = 0; it < maxit; ++it) {
    Eigen::Vector2d F = lm_at(imm, u, br);
    double fscale = 1.0 + F.norm();
    Eigen::Matrix<double, 2, 3> J = lm_jacobian(imm, u, br);
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(
        J, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(1) < 1e-8 * (svd.singularValues()(0) + 1e-30)) {
      if (rank_drop) {
        *rank_drop = true;
        return u;
      }
      throw Error(Err::JacobianRankDrop, "pu-curve Newton: Jacobian rank drop");
    }
    Vec3 delta;
    if (plane_normal) {
      Mat3 M;
      M.block<2, 3>(0, 0) = J;
      M.row(2) = plane_normal->transpose();
      Vec3 rhs(-F[0], -F[1], plane_normal->dot(*plane_point - u));
      delta = M.fullPivLu().solve(rhs);
    } else {
      delta = svd.solve(-F);
    }
    u += delta;
    if (F.norm() <= tol * fscale && delta.norm() <= tol * (1.0 + u.norm())) return u;
    if (delta.norm() > 1.0) throw Error(Err::NewtonDiverged, "pu-curve Newton: step blow-up");
  }
  throw Error(Err::NewtonDiverged, "pu-curve Newton: no convergence");
}

Vec3 curve_tangent(const ImmersionField& imm, const Vec3& u, SimpleBranch br) {
  Eigen::Matrix<double, 2, 3> J = lm_jacobian(imm, u, br);
  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(J, Eigen::ComputeFullV);
  Vec3 t = svd.matrixV().col(2);
  return t.normalized();
}

}  // namespace

MongeJet fit_local_jet(const ImmersionField& imm, const Vec3& p, double step) {
  FormsSample fs = compute_forms(imm, p);
  PrincipalData pd = principal_solve(fs);
  std::array<Vec4, 3> d1;
  std::array<std::array<Vec4, 3>, 3> d2;
  imm.derivatives(p, d1, d2);
  Vec4 alpha0 = imm.position(p);
  auto embed = [&](const Vec3& e) { return (d1[0]*e[0] + d1[1]*e[1] + d1[2]*e[2]).eval(); };
  Vec4 t1 = embed(pd.e1), t2 = embed(pd.e2), t3 = embed(pd.e3);
  Vec4 N = fs.N;
  // keep the frame positively oriented with N as the positive normal
  Eigen::Matrix4d Fr;
  Fr.col(0) = t1;
  Fr.col(1) = t2;
  Fr.col(2) = t3;
  Fr.col(3) = N;
  Vec3 e2 = pd.e2;
  if (Fr.determinant() < 0.0) {
    t2 = -t2;
    e2 = -e2;
  }

  // graph height over the adapted frame, solved pointwise by Newton
  auto graph = [&](const Vec3& v) {
    Vec3 u = p + pd.e1 * v[0] + e2 * v[1] + pd.e3 * v[2];
    for (int it = 0; it < 12; ++it) {
      Vec4 rpos = imm.position(u) - alpha0;
      Vec3 F(rpos.dot(t1) - v[0], rpos.dot(t2) - v[1], rpos.dot(t3) - v[2]);
      std::array<Vec4, 3> dd1;
      std::array<std::array<Vec4, 3>, 3> dd2;
      imm.derivatives(u, dd1, dd2);
      Mat3 J;
      for (int col = 0; col < 3; ++col) {
        J(0, col) = dd1[col].dot(t1);
        J(1, col) = dd1[col].dot(t2);
        J(2, col) = dd1[col].dot(t3);
      }
      Vec3 delta = J.fullPivLu().solve(-F);
      u += delta;
      if (delta.norm() < 1e-14 * (1.0 + u.norm())) break;
    }
    return (imm.position(u) - alpha0).dot(N);
  };

  // tensor stencil, offsets -2..2 per axis
  const double s = step;
  double G[5][5][5];
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int kk = 0; kk < 5; ++kk)
        G[i][j][kk] = graph(Vec3((i - 2) * s, (j - 2) * s, (kk - 2) * s));

  auto wrow = [&](int order) -> std::array<double, 5> {
    switch (order) {
      case 0: return {0, 0, 1, 0, 0};
      case 1: return {1.0 / (12*s), -8.0 / (12*s), 0, 8.0 / (12*s), -1.0 / (12*s)};
      case 2: return {-1.0 / (12*s*s), 16.0 / (12*s*s), -30.0 / (12*s*s),
                      16.0 / (12*s*s), -1.0 / (12*s*s)};
      case 3: return {-1.0 / (2*s*s*s), 2.0 / (2*s*s*s), 0, -2.0 / (2*s*s*s),
                      1.0 / (2*s*s*s)};
      default: return {1.0 / (s*s*s*s), -4.0 / (s*s*s*s), 6.0 / (s*s*s*s),
                       -4.0 / (s*s*s*s), 1.0 / (s*s*s*s)};
    }
  };
  static const double fact[5] = {1, 1, 2, 6, 24};
  Poly3 hp(4);
  for (const auto& m : Poly3::monomials(4)) {
    int i = m[0], j = m[1], kk = m[2];
    auto wi = wrow(i), wj = wrow(j), wk = wrow(kk);
    double der = 0.0;
    for (int x = 0; x < 5; ++x) {
      if (wi[x] == 0.0) continue;
      for (int y = 0; y < 5; ++y) {
        if (wj[y] == 0.0) continue;
        for (int z = 0; z < 5; ++z) der += wi[x] * wj[y] * wk[z] * G[x][y][z];
      }
    }
    hp.at(i, j, kk) = der / (fact[i] * fact[j] * fact[kk]);
  }
  // the frame construction forces vanishing low-order terms; drop FD noise
  hp.at(0, 0, 0) = 0;
  hp.at(1, 0, 0) = 0;
  hp.at(0, 1, 0) = 0;
  hp.at(0, 0, 1) = 0;
  hp.at(1, 1, 0) = 0;
  hp.at(1, 0, 1) = 0;
  hp.at(0, 1, 1) = 0;
  double kpair = 0.5 * (hp.at(2, 0, 0) + hp.at(0, 2, 0));
  hp.at(2, 0, 0) = kpair;
  hp.at(0, 2, 0) = kpair;
  MongeJet raw = jet_from_poly(hp, 1e-4);
  return adapt_rotation(raw).jet;
}

CurveResult continue_pu_curve(const ImmersionField& imm, const Vec3& seed,
                              const ContinuationParams& params) {
  CurveResult out;
  bool rank_drop = false;
  Vec3 u0 = newton_correct(imm, seed, params.branch, nullptr, nullptr,
                           params.newton_tol, params.newton_maxit, &rank_drop);
  if (rank_drop)
    throw Error(Err::JacobianRankDrop, "continue_pu_curve: rank drop at seed");

  auto make_sample = [&](const Vec3& u, double t) {
    CurveSample cs;
    cs.u = u;
    cs.t = t;
    PipelineEval pe = eval_pipeline(imm, u, params.branch);
    cs.gap23 = params.branch == SimpleBranch::Largest ? pe.pd.gap23 : pe.pd.gap12;
    if (params.reclassify) {
      try {
        MongeJet local = fit_local_jet(imm, u, params.fit_step);
        cs.kind = classify_point(local, params.reclassify_tol).kind;
      } catch (const Error&) {
        cs.kind = PUKind::NonGeneric;
      }
    }
    return cs;
  };

  Vec3 t0 = curve_tangent(imm, u0, params.branch);
  std::vector<CurveSample> fwd, bwd;
  for (int dir = 0; dir < 2; ++dir) {
    Vec3 u = u0;
    Vec3 tangent = dir == 0 ? t0 : Vec3(-t0);
    double t_acc = 0.0;
    Err halt = Err::None;
    for (int stepi = 0; stepi < params.max_steps; ++stepi) {
      double h = params.step;
      bool accepted = false;
      for (int attempt = 0; attempt < 5 && !accepted; ++attempt, h *= 0.5) {
        Vec3 pred = u + h * tangent;
        try {
          bool rd = false;
          Vec3 corr = newton_correct(imm, pred, params.branch, &tangent, &pred,
                                     params.newton_tol, params.newton_maxit, &rd);
          if (rd) {
            halt = Err::JacobianRankDrop;
            break;
          }
          Vec3 tn = curve_tangent(imm, corr, params.branch);
          if (tn.dot(tangent) < 0.0) tn = -tn;
          t_acc += (corr - u).norm();
          u = corr;
          tangent = tn;
          accepted = true;
        } catch (const Error& e) {
          if (attempt == 4) halt = e.code;
        }
      }
      if (!accepted) break;
      double signed_t = dir == 0 ? t_acc : -t_acc;
      (dir == 0 ? fwd : bwd).push_back(make_sample(u, signed_t));
    }
    (dir == 0 ? out.halt_forward : out.halt_backward) = halt;
  }
  for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) out.samples.push_back(*it);
  out.samples.push_back(make_sample(u0, 0.0));
  for (const auto& csample : fwd) out.samples.push_back(csample);
  return out;
}

std::vector<ContactReport> curve_plane_contact(const ImmersionField& imm,
                                               const CurveResult& curve,
                                               SimpleBranch branch) {
  const auto& ss = curve.samples;
  std::vector<ContactReport> out(ss.size());
  if (ss.size() < 2) return out;
  std::vector<double> v(ss.size(), 0.0);
  for (std::size_t i = 0; i < ss.size(); ++i) {
    Vec3 tan;
    if (i == 0)
      tan = ss[1].u - ss[0].u;
    else if (i + 1 == ss.size())
      tan = ss[i].u - ss[i - 1].u;
    else
      tan = ss[i + 1].u - ss[i - 1].u;
    if (tan.norm() == 0.0) continue;
    tan.normalize();
    PipelineEval pe = eval_pipeline(imm, ss[i].u, branch);
    v[i] = pe.pf.omega.dot(tan) / pe.pf.omega.norm();
  }
  const double thresh = 1e-3;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    out[i].value = v[i];
    if (std::abs(v[i]) >= thresh) {
      out[i].kind = ContactKind::Transversal;
    } else if (i > 0 && i + 1 < ss.size() && v[i - 1] * v[i + 1] < 0.0) {
      out[i].kind = ContactKind::Quadratic;
    } else {
      out[i].kind = ContactKind::Degenerate;
    }
  }
  return out;
}

}  // namespace pmb
