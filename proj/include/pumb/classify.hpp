#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pumb/restricted.hpp"

namespace pmb {

enum class PUKind { D1, D2, D3, D12, D23, Umbilic, NonGeneric };
const char* kind_name(PUKind k);

struct PUClassification {
  PUKind kind = PUKind::NonGeneric;
  std::string reason;  // set for NonGeneric
  // invariant record
  double T = 0;         // b (b - a)
  double disc = 0;      // -(c^2/4b^2 - a/b + 2) (2a/b - 4)^2; positive <=> D1
  double chi12 = 0;
  double chi12star = 0;
  double chi23 = 0;
  double d23_regularity = 0;  // b (q201 - q021) + c q111
  // margins to the boundary conditions (relative)
  double margin_a2b = 0;      // |a - 2b| / scale
  double margin_ab = 0;       // |a - b| / scale
  double margin_disc = 0;     // |c^2 - 4b(a-2b)| / scale^2
};

double chi12(const MongeJet& jet);
double chi12star(const MongeJet& jet);
double chi23(const MongeJet& jet);

// Classification of the origin of an adapted jet (d must vanish; pass the jet
// through adapt_rotation first).  tol is the relative tolerance used for the
// paper-exact equality conditions.
PUClassification classify_point(const MongeJet& jet, double tol = 1e-9);

enum class ContactKind { Transversal, Quadratic, Degenerate };

struct CurveSample {
  Vec3 u;
  double t = 0;              // accumulated (signed) arc length from the seed
  double gap23 = 0;
  PUKind kind = PUKind::NonGeneric;  // local re-classification (optional)
  double omega_dot_tangent = 0;      // contact diagnostic value
};

struct CurveResult {
  std::vector<CurveSample> samples;  // ordered by t
  Err halt_forward = Err::None;      // why continuation stopped on each side
  Err halt_backward = Err::None;
};

struct ContinuationParams {
  double step = 4e-3;
  int max_steps = 60;         // per direction
  double newton_tol = 1e-12;
  int newton_maxit = 30;
  double reclassify_tol = 1e-3;   // boundary tolerance for fitted jets
  double fit_step = 1e-3;         // local-jet stencil step
  bool reclassify = true;
  SimpleBranch branch = SimpleBranch::Largest;
};

// Pseudo-arclength continuation of Lr = Mr = 0 from a seed, with Newton
// correction; throws NewtonDiverged / JacobianRankDrop from the seed solve.
CurveResult continue_pu_curve(const ImmersionField& imm, const Vec3& seed,
                              const ContinuationParams& params = {});

// Fits the adapted Monge jet of the immersion at p (graph over the principal
// frame, fourth-order finite-difference stencils, rotation-adapted).
MongeJet fit_local_jet(const ImmersionField& imm, const Vec3& p, double step = 1e-3);

struct ContactReport {
  ContactKind kind = ContactKind::Degenerate;
  double value = 0;  // omega(S'(t)) normalized by |omega| |S'|
};

// Contact of the curve with the plane field along the samples:
// transversal (bounded away from zero), one simple zero (quadratic contact),
// or degenerate.
std::vector<ContactReport> curve_plane_contact(const ImmersionField& imm,
                                               const CurveResult& curve,
                                               SimpleBranch branch = SimpleBranch::Largest);

}  // namespace pmb
