#pragma once

#include "pumb/numeric.hpp"
#include "pumb/principal.hpp"

namespace pmb {

// Fundamental forms restricted to the plane field (du3 = calU du1 + calV du2)
// and the implicit-quadratic coefficients Lr P^2 + Mr P + Nr = 0 for the
// slope P = du2/du1 of the remaining principal directions.
struct RestrictedSample {
  double Er = 0, Fr = 0, Gr = 0;  // restricted first form
  double er = 0, fr = 0, gr = 0;  // restricted second form
  double Lr = 0, Mr = 0, Nr = 0;  // Lr = Fr gr - fr Gr, etc.
};

RestrictedSample restrict_forms(const FormsSample& fs, const PlaneFieldSample& pf);

// Tabulated quadratic series of Er..gr near the origin (L/M/N recomputed).
RestrictedSample oracle_restricted(const MongeJet& jet, const Vec3& u);

struct SlopeRoots {
  int count = 0;
  double P[2] = {0, 0};
  bool root_at_infinity = false;  // |Lr| below tolerance: one direction has du1 = 0
  double discriminant = 0;
};

// Roots of the restricted quadratic.  Throws AllCoefficientsZero when every
// coefficient is below tol * scale(er,fr,gr) — a partially umbilic point.
SlopeRoots slope_quadratic_roots(const RestrictedSample& rs, double tol = 1e-10);

// Chart direction (du1,du2,du3) of a slope root.
inline Vec3 lift_slope(const PlaneFieldSample& pf, double P) {
  return Vec3(1.0, P, pf.calU + pf.calV * P);
}
inline Vec3 lift_slope_infinity(const PlaneFieldSample& pf) {
  return Vec3(0.0, 1.0, pf.calV);
}

}  // namespace pmb
