#pragma once

#include <array>
#include <functional>

#include "pumb/common.hpp"

namespace pmb {

// Central difference with one Richardson level (steps h and h/2): O(h^4).
double deriv_central(const std::function<double(double)>& f, double x, double h);

// Gradient of a scalar field on R^3, deriv_central per component.
Vec3 grad_central(const std::function<double(const Vec3&)>& f, const Vec3& u, double h);

struct QuadraticRoots {
  int count = 0;                 // real finite roots
  double r[2] = {0, 0};
  bool root_at_infinity = false; // leading coefficient below tolerance
  double discriminant = 0;
};

// Roots of l*x^2 + m*x + n = 0 with the cancellation-safe formula.
QuadraticRoots solve_quadratic(double l, double m, double n, double coeff_tol = 0.0);

struct CubicRoots {
  int count = 0;            // distinct real roots (multiplicity collapsed)
  double r[3] = {0, 0, 0};
  int multiplicity[3] = {0, 0, 0};
};

// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 = 0 (Cardano + Newton polish).
CubicRoots solve_cubic(double c3, double c2, double c1, double c0);

// Discriminant views of the monic cubic x^3 + (c2/c3) x^2 + ... .
struct CubicDiscriminant {
  double monic = 0;        // classical discriminant of the monic cubic
  double darbouxian = 0;   // -monic     (positive <=> a single real root)
  double cardano = 0;      // -monic/108 == (q/2)^2 + (p/3)^3 of the depressed cubic
};
CubicDiscriminant cubic_discriminant(double c3, double c2, double c1, double c0);

// Dormand-Prince RK45 step on a fixed-size state.
template <int N>
struct RkResult {
  Eigen::Matrix<double, N, 1> y;
  double error;  // scaled error estimate
};

template <int N>
RkResult<N> rk45_step(const std::function<Eigen::Matrix<double, N, 1>(
                          const Eigen::Matrix<double, N, 1>&)>& f,
                      const Eigen::Matrix<double, N, 1>& y, double h,
                      double atol, double rtol) {
  using V = Eigen::Matrix<double, N, 1>;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  V k1 = f(y);
  V k2 = f(y + h * a21 * k1);
  V k3 = f(y + h * (a31 * k1 + a32 * k2));
  V k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  V k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  V k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  V ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  V k7 = f(ynew);
  V err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  double scaled = 0.0;
  for (int i = 0; i < N; ++i) {
    double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
    scaled = std::max(scaled, std::abs(err[i]) / sc);
  }
  return {ynew, scaled};
}

// Discrete Frechet distance between two polylines.
double frechet_distance(const std::vector<Vec3>& p, const std::vector<Vec3>& q);

}  // namespace pmb
