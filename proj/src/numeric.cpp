#include "pumb/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>

namespace pmb {

const char* err_name(Err e) {
  switch (e) {
    case Err::None: return "None";
    case Err::Parse: return "ParseError";
    case Err::InvalidArg: return "InvalidArg";
    case Err::AllCubicsZero: return "AllCubicsZero";
    case Err::ZeroCurvature: return "ZeroCurvature";
    case Err::RankDeficient: return "RankDeficient";
    case Err::NotPositiveDefinite: return "NotPositiveDefinite";
    case Err::DegeneratePlane: return "DegeneratePlane";
    case Err::AllCoefficientsZero: return "AllCoefficientsZero";
    case Err::BranchCountMismatch: return "BranchCountMismatch";
    case Err::SpectralTolerance: return "SpectralTolerance";
    case Err::NewtonDiverged: return "NewtonDiverged";
    case Err::JacobianRankDrop: return "JacobianRankDrop";
    case Err::SeedOnSingularSet: return "SeedOnSingularSet";
    case Err::StepUnderflow: return "StepUnderflow";
    case Err::ProjectionFailed: return "ProjectionFailed";
    case Err::NotNormallyHyperbolic: return "NotNormallyHyperbolic";
  }
  return "Unknown";
}

void parallel_for(std::size_t n, int nthreads, const std::function<void(std::size_t)>& fn) {
  if (nthreads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  int nt = std::min<std::size_t>(nthreads, n);
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  std::exception_ptr eptr = nullptr;
  std::mutex emu;
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(emu);
          if (!eptr) eptr = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (eptr) std::rethrow_exception(eptr);
}

double deriv_central(const std::function<double(double)>& f, double x, double h) {
  auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
  double d1 = d(h), d2 = d(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

Vec3 grad_central(const std::function<double(const Vec3&)>& f, const Vec3& u, double h) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) {
    g[i] = deriv_central(
        [&](double x) {
          Vec3 v = u;
          v[i] = x;
          return f(v);
        },
        u[i], h);
  }
  return g;
}

QuadraticRoots solve_quadratic(double l, double m, double n, double coeff_tol) {
  QuadraticRoots out;
  double scale = std::max({std::abs(l), std::abs(m), std::abs(n)});
  if (scale == 0.0) return out;
  if (std::abs(l) <= coeff_tol * scale || l == 0.0) {
    out.root_at_infinity = true;
    if (std::abs(m) > coeff_tol * scale && m != 0.0) {
      out.count = 1;
      out.r[0] = -n / m;
    }
    out.discriminant = m * m;
    return out;
  }
  double disc = m * m - 4.0 * l * n;
  out.discriminant = disc;
  if (disc < 0.0) return out;
  double sq = std::sqrt(disc);
  double qq = -0.5 * (m + (m >= 0.0 ? sq : -sq));
  out.count = disc == 0.0 ? 1 : 2;
  if (qq != 0.0) {
    out.r[0] = qq / l;
    out.r[1] = n / qq;
  } else {
    out.r[0] = 0.0;
    out.r[1] = -m / l;
  }
  if (out.count == 2 && out.r[0] > out.r[1]) std::swap(out.r[0], out.r[1]);
  return out;
}

CubicDiscriminant cubic_discriminant(double c3, double c2, double c1, double c0) {
  CubicDiscriminant d;
  double D = 18.0 * c3 * c2 * c1 * c0 - 4.0 * c2 * c2 * c2 * c0 +
             c2 * c2 * c1 * c1 - 4.0 * c3 * c1 * c1 * c1 -
             27.0 * c3 * c3 * c0 * c0;
  double m = D / (c3 * c3 * c3 * c3);
  d.monic = m;
  d.darbouxian = -m;
  d.cardano = -m / 108.0;
  return d;
}

CubicRoots solve_cubic(double c3, double c2, double c1, double c0) {
  CubicRoots out;
  double scale = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) return out;
  if (std::abs(c3) < 1e-14 * scale) {
    QuadraticRoots q = solve_quadratic(c2, c1, c0);
    out.count = q.count;
    for (int i = 0; i < q.count; ++i) {
      out.r[i] = q.r[i];
      out.multiplicity[i] = 1;
    }
    return out;
  }
  double a = c2 / c3, b = c1 / c3, c = c0 / c3;
  double p = b - a * a / 3.0;
  double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  double shift = -a / 3.0;
  double disc = 0.25 * q * q + p * p * p / 27.0;  // >0: one real root
  double tol = 1e-12 * (std::abs(p) * std::abs(p) * std::abs(p) + q * q + 1e-300);
  auto push = [&](double r, int mult) {
    out.r[out.count] = r;
    out.multiplicity[out.count] = mult;
    out.count++;
  };
  if (disc > tol) {
    double s = std::sqrt(disc);
    double u = std::cbrt(-0.5 * q + s);
    double v = std::cbrt(-0.5 * q - s);
    push(u + v + shift, 1);
  } else if (disc >= -tol) {
    if (std::abs(p) < 1e-13 * (1.0 + std::abs(q))) {
      push(shift, 3);  // triple root
    } else {
      double u = std::cbrt(-0.5 * q);
      push(2.0 * u + shift, 1);
      push(-u + shift, 2);
    }
  } else {
    double rho = std::sqrt(-p * p * p / 27.0);
    double theta = std::acos(std::clamp(-0.5 * q / rho, -1.0, 1.0));
    double mag = 2.0 * std::sqrt(-p / 3.0);
    for (int kk = 0; kk < 3; ++kk)
      push(mag * std::cos((theta + 2.0 * M_PI * kk) / 3.0) + shift, 1);
  }
  // two Newton polish steps on the original cubic
  for (int i = 0; i < out.count; ++i) {
    double x = out.r[i];
    for (int it = 0; it < 2; ++it) {
      double f = ((c3 * x + c2) * x + c1) * x + c0;
      double df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
      if (out.multiplicity[i] == 1 && std::abs(df) > 1e-30) x -= f / df;
    }
    out.r[i] = x;
  }
  std::array<int, 3> idx = {0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    if (i >= out.count) return false;
    if (j >= out.count) return true;
    return out.r[i] < out.r[j];
  });
  CubicRoots sorted = out;
  for (int i = 0; i < out.count; ++i) {
    sorted.r[i] = out.r[idx[i]];
    sorted.multiplicity[i] = out.multiplicity[idx[i]];
  }
  return sorted;
}

double frechet_distance(const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
  const std::size_t n = p.size(), m = q.size();
  if (n == 0 || m == 0) return std::numeric_limits<double>::infinity();
  std::vector<double> prev(m), cur(m);
  auto d = [&](std::size_t i, std::size_t j) { return (p[i] - q[j]).norm(); };
  prev[0] = d(0, 0);
  for (std::size_t j = 1; j < m; ++j) prev[j] = std::max(prev[j - 1], d(0, j));
  for (std::size_t i = 1; i < n; ++i) {
    cur[0] = std::max(prev[0], d(i, 0));
    for (std::size_t j = 1; j < m; ++j)
      cur[j] = std::max(std::min({prev[j], prev[j - 1], cur[j - 1]}), d(i, j));
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

}  // namespace pmb
