#include "pumb/principal.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "pumb/numeric.hpp"

namespace pmb {

namespace {

// Largest-|component| entry positive; ties to the lowest index.
Vec3 fix_sign(Vec3 v) {
  int arg = 0;
  double best = std::abs(v[0]);
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v[i]) > best + 1e-14 * best) {
      best = std::abs(v[i]);
      arg = i;
    }
  }
  return v[arg] < 0.0 ? Vec3(-v) : v;
}

}  // namespace

PrincipalData principal_solve(const FormsSample& fs, double eps_umb) {
  Eigen::LLT<Mat3> llt(fs.g);
  if (llt.info() != Eigen::Success)
    throw Error(Err::NotPositiveDefinite, "principal_solve: g not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat3> es(fs.lambda, fs.g);
  if (es.info() != Eigen::Success)
    throw Error(Err::NotPositiveDefinite, "principal_solve: eigensolver failed");

  PrincipalData out;
  Vec3 w = es.eigenvalues();  // ascending
  out.k1 = w[0];
  out.k2 = w[1];
  out.k3 = w[2];
  out.gap12 = w[1] - w[0];
  out.gap23 = w[2] - w[1];
  if (eps_umb < 0.0) eps_umb = default_eps_umb(w[2]);
  out.pair12_degenerate = out.gap12 < eps_umb;
  out.pair23_degenerate = out.gap23 < eps_umb;
  // vectors already satisfy e_i^T g e_j = delta_ij
  out.e1 = fix_sign(es.eigenvectors().col(0));
  out.e2 = fix_sign(es.eigenvectors().col(1));
  out.e3 = fix_sign(es.eigenvectors().col(2));
  return out;
}

double k3_branch_oracle(const MongeJet& jt, const Vec3& u) {
  const double u1 = u[0], u2 = u[1], u3 = u[2];
  const double k = jt.k, k3 = jt.k3;
  const double dk = k - k3;
  return k3 + jt.q102*u1 + jt.q012*u2 + jt.q003*u3
         - (k3*k*k*dk - k*jt.Q202 + 2*jt.q201*jt.q201 + k3*jt.Q202 + 2*jt.q111*jt.q111)/dk*u1*u1
         + (k*jt.Q112 - 2*jt.q201*jt.q111 - k3*jt.Q112 - 2*jt.q111*jt.q021)/dk*u1*u2
         - (k3*k*k*dk - k*jt.Q022 + 2*jt.q111*jt.q111 + 2*jt.q021*jt.q021 + k3*jt.Q022)/dk*u2*u2
         + (k*jt.Q103 - 2*jt.q012*jt.q111 - 2*jt.q201*jt.q102 - jt.Q103*k3)/dk*u1*u3
         + (k*jt.Q013 - 2*jt.q102*jt.q111 - 2*jt.q021*jt.q012 - k3*jt.Q013)/dk*u2*u3
         + (k*jt.Q004 - 3*k3*k3*k3*k + 3*k3*k3*k3*k3 - 2*jt.q102*jt.q102 - k3*jt.Q004
            - 2*jt.q012*jt.q012)/dk*u3*u3;
}

PlaneFieldSample plane_field(const FormsSample& fs, double k3v, double w1_tol) {
  const Mat3& g = fs.g;
  const Mat3& l = fs.lambda;
  PlaneFieldSample out;
  out.U1 = (g(0,1)*g(1,2) - g(1,1)*g(0,2)) * k3v * k3v
           + (-g(0,1)*l(1,2) - g(1,2)*l(0,1) + l(1,1)*g(0,2) + g(1,1)*l(0,2)) * k3v
           + l(1,2)*l(0,1) - l(1,1)*l(0,2);
  out.V1 = (-g(0,0)*g(1,2) + g(0,2)*g(0,1)) * k3v * k3v
           + (l(0,0)*g(1,2) + g(0,0)*l(1,2) - l(0,2)*g(0,1) - g(0,2)*l(0,1)) * k3v
           - l(0,0)*l(1,2) + l(0,2)*l(0,1);
  out.W1 = (g(0,0)*g(1,1) - g(0,1)*g(0,1)) * k3v * k3v
           + (-l(0,0)*g(1,1) - g(0,0)*l(1,1) + 2.0*l(0,1)*g(0,1)) * k3v
           + l(0,0)*l(1,1) - l(0,1)*l(0,1);
  Vec3 e3(out.U1, out.V1, out.W1);
  out.omega = g * e3;
  const double scale = std::max({std::abs(out.U1), std::abs(out.V1), std::abs(out.W1),
                                 k3v * k3v, 1e-300});
  if (std::abs(out.W1) < w1_tol * scale || std::abs(out.omega[2]) < w1_tol * scale)
    throw Error(Err::DegeneratePlane, "plane_field: W1 vanishes (simple branch lost)");
  out.calU = -out.omega[0] / out.omega[2];
  out.calV = -out.omega[1] / out.omega[2];
  return out;
}

PlaneFieldSample plane_field_oracle(const MongeJet& jt, const Vec3& u) {
  const double u1 = u[0], u2 = u[1], u3 = u[2];
  const double k = jt.k, k3 = jt.k3, a = jt.a, b = jt.b, c = jt.c;
  const double q003 = jt.q003, q012 = jt.q012, q021 = jt.q021, q102 = jt.q102,
               q111 = jt.q111, q201 = jt.q201;
  const double Q013 = jt.Q013, Q022 = jt.Q022, Q031 = jt.Q031, Q103 = jt.Q103,
               Q112 = jt.Q112, Q121 = jt.Q121, Q202 = jt.Q202, Q211 = jt.Q211,
               Q301 = jt.Q301;
  PlaneFieldSample out;
  out.U1 = (k3-k)*q201*u1 + (k3-k)*q111*u2 + (k3-k)*q102*u3
           + (Q301/2*(k3-k) - q201*(b+q102))*u1*u1
           + (q021*b - c*q111 + (k3-k)/2*Q121 + q111*q012)*u2*u2
           + (-q201*c + q201*q012 + q111*q102 + Q211*(k3-k))*u1*u2
           + (q111*q111 + (k3*k3*k - Q202)*(k-k3) + q201*(q003-q021) + (q102-b)*q102)*u1*u3
           + (q012*b - q102*c + (k3-k)*Q112 + q003*q111 + q012*q102)*u2*u3
           + (q111*q012 - q102*q021 + (k3-k)/2*Q103 + q003*q102)*u3*u3;
  out.V1 = (k3-k)*q111*u1 + (k3-k)*q021*u2 + (k3-k)*q012*u3
           + (q111*(q102-a) - Q211/2*(k-k3))*u1*u1
           + (q111*b + q012*q021 + (k3-k)/2*Q031)*u2*u2
           + (q111*q012 + q201*b + (k3-k)*Q121 + q102*q021 - a*q021)*u1*u2
           + (q003*q111 + q012*(q102-a) + (k3-k)*Q112)*u1*u3
           + (q102*b + q111*q111 - q201*q021 + q021*q003 + q012*q012
              + (k3*k3*k - Q022)*(k-k3))*u2*u3
           + ((k3-k)/2*Q013 - q201*q012 + q111*q102 + q003*q012)*u3*u3;
  out.W1 = (k-k3)*(k-k3) + (k-k3)*(a+b-2*q102)*u1 + (k-k3)*(c-2*q012)*u2
           + (k3-k)*(2*q003-q021-q201)*u3;
  const double K2 = 2.0*(k-k3)*(k-k3);
  out.calU = (2*q201*(k-k3)*u1 + 2*q111*(k-k3)*u2 + 2*q102*(k-k3)*u3
              + (-2*q021*b + 2*q111*q012 + k*Q121 - k3*Q121)*u2*u2
              + (2*q003*q102 - 2*q201*q102 + (k-k3)*Q103 - 2*q111*q012)*u3*u3
              + (2*k*k3*k3*k3 - 2*q201*q201 - 2*k3*Q202 - 2*k3*k3*k*k + 2*k*Q202
                 + 2*q102*q102 - 2*q111*q111 - 2*a*q102 + 2*q201*q003)*u3*u1
              + (-k3*Q301 + 2*q201*q102 - 2*q201*a + Q301*k)*u1*u1
              + (-2*k3*Q112 + 2*q012*q102 - 2*q111*q021 + 2*q003*q111 - 2*q012*b
                 - 2*q201*q111 + 2*k*Q112)*u3*u2
              + (-2*a*q111 + 2*q102*q111 + 2*q201*q012 - 2*q111*b - 2*k3*Q211
                 + 2*Q211*k)*u1*u2) / K2;
  out.calV = (2*q021*(k-k3)*u2 + 2*q111*(k-k3)*u1 + 2*q012*(k-k3)*u3
              + (k*Q031 - 2*q111*b - 2*q021*c - k3*Q031 + 2*q012*q021)*u2*u2
              + (-2*k3*k3*k*k - 2*q111*q111 + 2*k3*k3*k3*k - 2*q012 + 2*k*Q022
                 - 2*k3*Q022 - 2*q021*q021 - 2*q102*b + 2*q012*q012
                 + 2*q021*q003)*u3*u2
              + (-2*q111*q201 + 2*q003*q111 + 2*k*Q112 - 2*q111*q021 + 2*q012*q102
                 - 2*q012*b - 2*k3*Q112)*u3*u1
              + (-k3*Q211 - 2*q111*b + 2*q102*q111 + Q211*k)*u1*u1
              + (k*Q013 + 2*q003*q012 - k3*Q013 - 2*q012*q021 - 2*q102*q111)*u3*u3
              + (-2*q111*c - 2*q201*b + 2*k*Q121 + 2*q102*q021 - 2*q021*b
                 - 2*k3*Q121 + 2*q111*q012)*u1*u2) / K2;
  Vec3 e3(out.U1, out.V1, out.W1);
  out.omega = e3;  // g = I + O(|u|^2); the oracle reports the leading form
  return out;
}

namespace {

Vec3 omega_at(const JetImmersion& imm, const Vec3& u) {
  FormsSample fs = compute_forms(imm, u);
  PrincipalData pd = principal_solve(fs);
  PlaneFieldSample pf = plane_field(fs, pd.k3);
  return pf.omega;
}

}  // namespace

double integrability_density(const MongeJet& jet, const Vec3& u, double fd_step) {
  JetImmersion imm(jet);
  const double h = fd_step * (1.0 + u.norm());
  Mat3 domega;  // domega(i,j) = d omega_j / d u_i
  for (int i = 0; i < 3; ++i) {
    Vec3 up = u, dn = u, up2 = u, dn2 = u;
    up[i] += h;
    dn[i] -= h;
    up2[i] += h / 2;
    dn2[i] -= h / 2;
    Vec3 d1 = (omega_at(imm, up) - omega_at(imm, dn)) / (2.0 * h);
    Vec3 d2 = (omega_at(imm, up2) - omega_at(imm, dn2)) / h;
    domega.row(i) = ((4.0 * d2 - d1) / 3.0).transpose();
  }
  Vec3 om = omega_at(imm, u);
  Vec3 curl(domega(1, 2) - domega(2, 1),
            domega(2, 0) - domega(0, 2),
            domega(0, 1) - domega(1, 0));
  return om.dot(curl);
}

}  // namespace pmb
