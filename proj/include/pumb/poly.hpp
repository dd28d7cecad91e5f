#pragma once

#include <array>
#include <vector>

#include "pumb/common.hpp"

namespace pmb {

// Dense polynomial in (u1,u2,u3) truncated at a fixed total degree.
// All products and compositions are truncated back to that degree.
class Poly3 {
 public:
  static constexpr int kMaxDeg = 8;

  explicit Poly3(int deg = 4);

  int degree() const { return deg_; }
  int size() const { return static_cast<int>(c_.size()); }

  double& at(int i, int j, int k);
  double at(int i, int j, int k) const;

  double eval(const Vec3& u) const;
  Poly3 diff(int var) const;                  // d/du_var, same truncation degree
  Poly3 truncated(int deg) const;

  Poly3 operator+(const Poly3& o) const;
  Poly3 operator-(const Poly3& o) const;
  Poly3 operator*(double s) const;
  Poly3& operator+=(const Poly3& o);
  Poly3 mul(const Poly3& o) const;            // truncated product

  // Substitute u_i = inner[i](v).  Inner constant terms must vanish unless
  // this polynomial is exact at its stated degree (shifts of exact
  // polynomials are exact; truncated series require zero inner constants).
  Poly3 compose(const std::array<Poly3, 3>& inner) const;

  // 1/(c0 + p) for p = this - this(0), via a truncated geometric series.
  // Requires a nonzero constant term.
  Poly3 reciprocal() const;

  double max_abs() const;

  // Iteration over monomials: index -> exponents.
  static int index_of(int deg, int i, int j, int k);
  static const std::vector<std::array<int, 3>>& monomials(int deg);

  const std::vector<double>& coeffs() const { return c_; }
  std::vector<double>& coeffs() { return c_; }

 private:
  int deg_;
  std::vector<double> c_;
};

}  // namespace pmb
