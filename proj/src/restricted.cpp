#include "pumb/restricted.hpp"

#include <cmath>

namespace pmb {

RestrictedSample restrict_forms(const FormsSample& fs, const PlaneFieldSample& pf) {
  const Mat3& g = fs.g;
  const Mat3& l = fs.lambda;
  const double cu = pf.calU, cv = pf.calV;
  RestrictedSample out;
  out.Er = g(0,0) + 2.0*g(0,2)*cu + g(2,2)*cu*cu;
  out.Fr = g(0,1) + g(0,2)*cv + g(1,2)*cu + g(2,2)*cu*cv;
  out.Gr = g(1,1) + 2.0*g(1,2)*cv + g(2,2)*cv*cv;
  out.er = l(0,0) + 2.0*l(0,2)*cu + l(2,2)*cu*cu;
  out.fr = l(0,1) + l(0,2)*cv + l(1,2)*cu + l(2,2)*cu*cv;
  out.gr = l(1,1) + 2.0*l(1,2)*cv + l(2,2)*cv*cv;
  out.Lr = out.Fr*out.gr - out.fr*out.Gr;
  out.Mr = out.Er*out.gr - out.er*out.Gr;
  out.Nr = out.Er*out.fr - out.er*out.Fr;
  return out;
}

RestrictedSample oracle_restricted(const MongeJet& jt, const Vec3& u) {
  const double u1 = u[0], u2 = u[1], u3 = u[2];
  const double k = jt.k, k3 = jt.k3, a = jt.a, b = jt.b, c = jt.c;
  const double q012 = jt.q012, q021 = jt.q021, q102 = jt.q102, q111 = jt.q111,
               q201 = jt.q201;
  const double A = jt.A, B = jt.B, C = jt.C, D = jt.D, E = jt.E;
  const double Q022 = jt.Q022, Q031 = jt.Q031, Q112 = jt.Q112, Q121 = jt.Q121,
               Q202 = jt.Q202, Q211 = jt.Q211, Q301 = jt.Q301;
  const double K2 = (k - k3) * (k - k3);
  RestrictedSample out;
  out.Er = 1 + (k*k + q201*q201/K2)*u1*u1 + 2*q111*q201/K2*u1*u2
           + 2*q102*q201/K2*u1*u3 + q111*q111/K2*u2*u2 + 2*q102*q111/K2*u2*u3
           + q102*q102/K2*u3*u3;
  out.Fr = (q102*q111 + q201*q012)/K2*u3*u1 + q102*q012/K2*u3*u3
           + q111*q021/K2*u2*u2 + (q111*q111/K2 + k*k + q201*q021/K2)*u1*u2
           + (q102*q021 + q111*q012)/K2*u2*u3 + q201*q111/K2*u1*u1;
  out.Gr = 1 + q012*q012/K2*u3*u3 + (k*k + q021*q021/K2)*u2*u2
           + q111*q111/K2*u1*u1 + 2*q021*q012/K2*u2*u3 + 2*q111*q021/K2*u1*u2
           + 2*q012*q111/K2*u1*u3;
  out.er = k + a*u1 + q201*u3 + (A/2 + (2*k-k3)*q201*q201/K2 - k*k*k/2)*u1*u1
           + ((2*k-k3)*q111*q111/K2 + C/2 - k*k*k/2)*u2*u2
           + (Q202/2 + (2*k-k3)*q102*q102/K2 - k*k3*k3/2)*u3*u3
           + (B + (4*k-2*k3)*q201*q111/K2)*u1*u2
           + ((4*k-2*k3)*q102*q201/K2 + Q301)*u1*u3
           + (Q211 + (4*k-2*k3)*q102*q111/K2)*u2*u3;
  out.fr = b*u2 + q111*u3 + (B/2 + (2*k-k3)*q201*q111/K2)*u1*u1
           + ((2*k-k3)*q021*q111/K2 + D/2)*u2*u2
           + ((2*k-k3)*q012*q102/K2 + Q112/2)*u3*u3
           + (C + (2*k-k3)*q021*q201/K2 + (2*k-k3)*q111*q111/K2)*u1*u2
           + (Q211 + (2*k-k3)*q012*q201/K2 + (2*k-k3)*q102*q111/K2)*u1*u3
           + (2*Q121 + (2*k-k3)*q012*q111/K2 + (2*k-k3)*q021*q102/K2)*u2*u3;
  out.gr = k + b*u1 + c*u2 + q021*u3 + (-k*k*k/2 + C/2 + (2*k-k3)*q111*q111/K2)*u1*u1
           + (-k*k*k/2 + E/2 + (2*k-k3)*q021*q021/K2)*u2*u2
           + (Q022/2 - k*k3*k3/2 + (2*k-k3)*q012*q012/K2)*u3*u3
           + (D + (-2*k3+4*k)*q021*q111/K2)*u1*u2
           + (Q121 + (-2*k3+4*k)*q012*q111/K2)*u1*u3
           + (Q031 + (-2*k3+4*k)*q012*q021/K2)*u2*u3;
  out.Lr = out.Fr*out.gr - out.fr*out.Gr;
  out.Mr = out.Er*out.gr - out.er*out.Gr;
  out.Nr = out.Er*out.fr - out.er*out.Fr;
  return out;
}

SlopeRoots slope_quadratic_roots(const RestrictedSample& rs, double tol) {
  const double scale = std::max({std::abs(rs.er), std::abs(rs.fr), std::abs(rs.gr),
                                 1e-300});
  const double thresh = tol * scale;
  if (std::abs(rs.Lr) < thresh && std::abs(rs.Mr) < thresh && std::abs(rs.Nr) < thresh)
    throw Error(Err::AllCoefficientsZero,
                "slope_quadratic_roots: partially umbilic point");
  QuadraticRoots q = solve_quadratic(rs.Lr, rs.Mr, rs.Nr,
                                     thresh / std::max({std::abs(rs.Lr),
                                                        std::abs(rs.Mr),
                                                        std::abs(rs.Nr)}));
  SlopeRoots out;
  out.count = q.count;
  out.P[0] = q.r[0];
  out.P[1] = q.r[1];
  out.root_at_infinity = q.root_at_infinity;
  out.discriminant = q.discriminant;
  return out;
}

}  // namespace pmb
