#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pumb/classify.hpp"

namespace pmb {

enum class LCChart { P, Q };  // Q = 1/P covers the slope at infinity

// Point of the suspension: (u1,u2,u3,P) with P the projective slope du2/du1.
struct LCState {
  Vec3 u = Vec3::Zero();
  double P = 0;
  LCChart chart = LCChart::P;
};

struct LCField {
  double X1 = 0, X2 = 0, X3 = 0, X4 = 0;
};

struct RestrictedDerivs {
  RestrictedSample rs;
  PlaneFieldSample pf;
  Vec3 dL, dM, dN;  // u-gradients of Lr, Mr, Nr
};

// Cubic in P giving the fiber equilibria: X4(u, P) = a3 P^3 + a2 P^2 + a1 P + a0.
struct FiberCubic {
  double a3 = 0, a2 = 0, a1 = 0, a0 = 0;
  double eval(double P) const { return ((a3 * P + a2) * P + a1) * P + a0; }
  double deriv(double P) const { return (3.0 * a3 * P + 2.0 * a2) * P + a1; }
};

enum class NHType { Saddle, Attractor, Repeller, SaddleNode, Undetermined };
const char* nh_name(NHType t);

struct BranchSample {
  double t = 0;  // arc parameter
  LCState state;
};

struct SingularBranch {
  std::string label;       // "gamma1".."gamma3" or "zeta1"/"zeta2"
  double root_at_origin = 0;
  std::vector<BranchSample> samples;  // ordered by t
  NHType nh_type = NHType::Undetermined;
  bool parametrized_by_slope = false;  // D12 zeta2: t is the fiber slope
  bool param_by_u1 = false;            // D23 branches: t is u1, else u3
};

struct SpectrumResult {
  double lambda3 = 0, lambda4 = 0;        // nonzero pair, ascending real part
  std::array<std::complex<double>, 4> all;
  NHType type = NHType::Undetermined;
  double zero_residual = 0;               // |structural zeros| / ||DX||
};

struct DiscriminantSample {
  double t = 0;
  FiberCubic cubic;
  double monic = 0;        // discriminant of the monic cubic
  double darbouxian = 0;   // -monic; positive <=> unique real slope
  double cardano = 0;      // -monic/108 = (q/2)^2+(p/3)^3 of the depressed cubic
};

// Everything evaluated through one numeric pipeline on a jet germ.
class LieCartan {
 public:
  explicit LieCartan(const MongeJet& jet, SimpleBranch branch = SimpleBranch::Largest,
                     double fd_step = 1e-5);

  const MongeJet& jet() const { return jet_; }

  RestrictedSample restricted(const Vec3& u) const;
  RestrictedDerivs derivs(const Vec3& u) const;

  double value(const LCState& s) const;           // L(u,P) (chart-aware)
  Eigen::Vector4d gradient(const LCState& s) const;
  LCField field(const LCState& s) const;
  FiberCubic fiber_cubic(const Vec3& u) const;    // X4(u, .) in the P-chart

  // Solves Lr = Mr = 0 near the origin with the arc parameter fixed:
  // parametrized by u3 (pivot in (u1,u2)) or by u1 (pivot in (u2,u3)).
  Vec3 pu_curve_point(double t, bool param_by_u1, Vec3 seed_hint = Vec3::Zero()) const;

  SpectrumResult spectrum_at(const LCState& s, double jac_step = 1e-5) const;

 private:
  MongeJet jet_;
  JetImmersion imm_;
  SimpleBranch branch_;
  double fd_step_;
};

// Locates the singular branches of the suspension over the partially umbilic
// curve through the origin.  The origin must classify as D1, D2, D3, D12 or
// D23; the branch count must match (else BranchCountMismatch).
std::vector<SingularBranch> find_singular_branches(const MongeJet& jet,
                                                   double arc_range = 0.05,
                                                   int n_samples = 21);

// Spectrum on a branch at arc parameter t (nearest stored sample is polished).
SpectrumResult branch_spectrum(const LieCartan& lc, const SingularBranch& branch,
                               double t);

// Discriminant of the fiber cubic along the partially umbilic curve.
std::vector<DiscriminantSample> branch_discriminant(const MongeJet& jet,
                                                    const std::vector<double>& ts);

// Tabulated leading parts of the suspension field in the Monge chart:
// X1 to linear order and the cubic coefficients A3..A0 to linear order.
struct LCFieldOracle {
  double X1 = 0;
  FiberCubic cubic;
};
LCFieldOracle lc_field_oracle(const MongeJet& jet, const LCState& s);

}  // namespace pmb
