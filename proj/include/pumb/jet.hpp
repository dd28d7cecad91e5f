#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "pumb/common.hpp"
#include "pumb/poly.hpp"

namespace pmb {

// Coefficient record of the adapted 4-jet height function
//   h = k/2 (u1^2+u2^2) + k3/2 u3^2 + a/6 u1^3 + b/2 u1 u2^2 + c/6 u2^3
//     + d/2 u1^2 u2 (zero once adapted) + q.../.. cubic mixed terms
//     + quartic terms A..E, Q....
// The origin is partially umbilic when k != k3.
struct MongeJet {
  double k = 0, k3 = 0;
  double a = 0, b = 0, c = 0, d = 0;
  double q003 = 0, q012 = 0, q021 = 0, q102 = 0, q111 = 0, q201 = 0;
  double A = 0, B = 0, C = 0, D = 0, E = 0;
  double Q004 = 0, Q013 = 0, Q022 = 0, Q031 = 0, Q103 = 0, Q112 = 0,
         Q121 = 0, Q202 = 0, Q211 = 0, Q301 = 0;

  static constexpr int kCoeffCount = 27;
  static const std::array<const char*, kCoeffCount>& coeff_names();
  double get(const std::string& name) const;        // throws InvalidArg on unknown name
  void set(const std::string& name, double value);  // throws InvalidArg on unknown name
};

// h as an exact degree-4 polynomial.
Poly3 height_poly(const MongeJet& jet);

// Inverse of height_poly; requires vanishing constant/linear terms and equal
// u1^2/u2^2 coefficients (within tol), else throws InvalidArg.
MongeJet jet_from_poly(const Poly3& h, double tol = 1e-9);

double eval_height(const MongeJet& jet, const Vec3& u);

// Evaluator for alpha(u) in R^4 with derivatives through order 2.
class ImmersionField {
 public:
  virtual ~ImmersionField() = default;
  virtual Vec4 position(const Vec3& u) const = 0;
  // d1[i] = d alpha/du_i, d2[i][j] = second partials (symmetric).
  virtual void derivatives(const Vec3& u, std::array<Vec4, 3>& d1,
                           std::array<std::array<Vec4, 3>, 3>& d2) const = 0;
};

// Monge graph (u, h(u)) of a polynomial jet; derivatives are exact.
class JetImmersion final : public ImmersionField {
 public:
  explicit JetImmersion(const MongeJet& jet);
  Vec4 position(const Vec3& u) const override;
  void derivatives(const Vec3& u, std::array<Vec4, 3>& d1,
                   std::array<std::array<Vec4, 3>, 3>& d2) const override;
  const MongeJet& jet() const { return jet_; }

 private:
  MongeJet jet_;
  Poly3 h_;
  std::array<Poly3, 3> dh_;
  std::array<std::array<Poly3, 3>, 3> d2h_;
};

// Caller-supplied immersion; derivatives by central finite differences with
// relative step `step` unless the caller provides exact ones.
class GenericImmersion final : public ImmersionField {
 public:
  using PositionFn = std::function<Vec4(const Vec3&)>;
  explicit GenericImmersion(PositionFn fn, double step = 1e-5);
  Vec4 position(const Vec3& u) const override;
  void derivatives(const Vec3& u, std::array<Vec4, 3>& d1,
                   std::array<std::array<Vec4, 3>, 3>& d2) const override;

 private:
  PositionFn fn_;
  double step_;
};

struct RotationResult {
  MongeJet jet;
  double angle = 0;
  bool degenerate = false;  // all cubic coefficients zero; nothing to adapt
};

// Rotates the (u1,u2)-plane so the u1^2 u2 coefficient vanishes (|d| <= 1e-13
// times the cubic scale).  Exact polynomial substitution; angle in [0, pi).
RotationResult adapt_rotation(const MongeJet& raw);

enum class ScaleTarget { K3ToOne, KToZero };

// K3ToOne: homothety (with reflection when k3 < 0) making k3 = 1.
// KToZero: composition with a sphere inversion centered on the normal axis
// making k = 0, re-rotated so the chart stays adapted.
MongeJet adapt_scale(const MongeJet& jet, ScaleTarget target);

// Rotate the chart by an arbitrary angle (test/verification helper).
MongeJet rotate_jet(const MongeJet& jet, double angle);

}  // namespace pmb
