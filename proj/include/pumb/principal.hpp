#pragma once

#include "pumb/forms.hpp"

namespace pmb {

enum class SimpleBranch { Largest, Smallest };  // S12 analysis uses Largest

struct PrincipalData {
  double k1 = 0, k2 = 0, k3 = 0;   // ascending
  Vec3 e1, e2, e3;                 // g-orthonormal, sign-fixed
  double gap12 = 0, gap23 = 0;
  bool pair12_degenerate = false;  // gap12 below the umbilic tolerance
  bool pair23_degenerate = false;
};

// Solves the symmetric pencil lambda v = kappa g v.
// eps_umb flags (near-)coincident pairs; any g-orthonormal basis of the
// eigenplane is returned for a flagged pair.
PrincipalData principal_solve(const FormsSample& fs, double eps_umb = -1.0);

inline double default_eps_umb(double k3) { return 1e-8 * (1.0 + std::abs(k3)); }

// Tabulated quadratic series for the simple curvature branch near the origin.
double k3_branch_oracle(const MongeJet& jet, const Vec3& u);

struct PlaneFieldSample {
  double U1 = 0, V1 = 0, W1 = 0;  // solution components of the simple direction
  Vec3 omega;                     // one-form coefficients: omega = g (U1,V1,W1)^T
  double calU = 0, calV = 0;      // du3 = calU du1 + calV du2 on the plane field
};

// Plane field orthogonal to the simple principal direction, from the forms
// and the simple curvature value at the point.  Throws DegeneratePlane when
// W1 (and the omega_3 denominator) vanish beyond tolerance.
PlaneFieldSample plane_field(const FormsSample& fs, double k3_value,
                             double w1_tol = 1e-10);

// Tabulated quadratic series of U1, V1, calU, calV (W1 linear) near the origin.
PlaneFieldSample plane_field_oracle(const MongeJet& jet, const Vec3& u);

// Scalar density of omega ^ d(omega), by finite differences of the one-form
// coefficients of the exact pipeline.  Near the origin its linear part is
// -(k-k3)^2 [ q111 (a-b) u1 + (b (q021-q201) - c q111) u2 ].
double integrability_density(const MongeJet& jet, const Vec3& u, double fd_step = 1e-4);

}  // namespace pmb
