#include "pumb/jet.hpp"

#include <cmath>

namespace pmb {

namespace {

struct CoeffRef {
  const char* name;
  double MongeJet::*field;
  int e[3];       // monomial exponents
  double denom;   // h += field/denom * u^e
};

const std::array<CoeffRef, MongeJet::kCoeffCount>& coeff_table() {
  static const std::array<CoeffRef, MongeJet::kCoeffCount> t = {{
      {"k", &MongeJet::k, {2, 0, 0}, 2},  // u2^2 partner added in height_poly
      {"k3", &MongeJet::k3, {0, 0, 2}, 2},
      {"a", &MongeJet::a, {3, 0, 0}, 6},
      {"b", &MongeJet::b, {1, 2, 0}, 2},
      {"c", &MongeJet::c, {0, 3, 0}, 6},
      {"d", &MongeJet::d, {2, 1, 0}, 2},
      {"q003", &MongeJet::q003, {0, 0, 3}, 6},
      {"q012", &MongeJet::q012, {0, 1, 2}, 2},
      {"q021", &MongeJet::q021, {0, 2, 1}, 2},
      {"q102", &MongeJet::q102, {1, 0, 2}, 2},
      {"q111", &MongeJet::q111, {1, 1, 1}, 1},
      {"q201", &MongeJet::q201, {2, 0, 1}, 2},
      {"A", &MongeJet::A, {4, 0, 0}, 24},
      {"B", &MongeJet::B, {3, 1, 0}, 6},
      {"C", &MongeJet::C, {2, 2, 0}, 4},
      {"D", &MongeJet::D, {1, 3, 0}, 6},
      {"E", &MongeJet::E, {0, 4, 0}, 24},
      {"Q004", &MongeJet::Q004, {0, 0, 4}, 24},
      {"Q013", &MongeJet::Q013, {0, 1, 3}, 6},
      {"Q022", &MongeJet::Q022, {0, 2, 2}, 4},
      {"Q031", &MongeJet::Q031, {0, 3, 1}, 6},
      {"Q103", &MongeJet::Q103, {1, 0, 3}, 6},
      {"Q112", &MongeJet::Q112, {1, 1, 2}, 2},
      {"Q121", &MongeJet::Q121, {1, 2, 1}, 2},
      {"Q202", &MongeJet::Q202, {2, 0, 2}, 4},
      {"Q211", &MongeJet::Q211, {2, 1, 1}, 2},
      {"Q301", &MongeJet::Q301, {3, 0, 1}, 6},
  }};
  return t;
}

}  // namespace

const std::array<const char*, MongeJet::kCoeffCount>& MongeJet::coeff_names() {
  static std::array<const char*, kCoeffCount> names = [] {
    std::array<const char*, kCoeffCount> n{};
    for (int i = 0; i < kCoeffCount; ++i) n[i] = coeff_table()[i].name;
    return n;
  }();
  return names;
}

double MongeJet::get(const std::string& name) const {
  for (const CoeffRef& r : coeff_table())
    if (name == r.name) return this->*(r.field);
  throw Error(Err::InvalidArg, "unknown jet coefficient: " + name);
}

void MongeJet::set(const std::string& name, double value) {
  for (const CoeffRef& r : coeff_table()) {
    if (name == r.name) {
      this->*(r.field) = value;
      return;
    }
  }
  throw Error(Err::InvalidArg, "unknown jet coefficient: " + name);
}

Poly3 height_poly(const MongeJet& jet) {
  Poly3 h(4);
  for (const CoeffRef& r : coeff_table())
    h.at(r.e[0], r.e[1], r.e[2]) += (jet.*(r.field)) / r.denom;
  h.at(0, 2, 0) += jet.k / 2.0;  // the k-block covers both u1^2 and u2^2
  return h;
}

MongeJet jet_from_poly(const Poly3& h, double tol) {
  double scale = std::max(1.0, h.max_abs());
  if (std::abs(h.at(0, 0, 0)) > tol * scale || std::abs(h.at(1, 0, 0)) > tol * scale ||
      std::abs(h.at(0, 1, 0)) > tol * scale || std::abs(h.at(0, 0, 1)) > tol * scale)
    throw Error(Err::InvalidArg, "jet_from_poly: constant/linear terms present");
  if (std::abs(h.at(2, 0, 0) - h.at(0, 2, 0)) > tol * scale ||
      std::abs(h.at(1, 1, 0)) > tol * scale || std::abs(h.at(1, 0, 1)) > tol * scale ||
      std::abs(h.at(0, 1, 1)) > tol * scale)
    throw Error(Err::InvalidArg, "jet_from_poly: quadratic part not diag(k,k,k3)");
  MongeJet jet;
  for (const CoeffRef& r : coeff_table())
    jet.*(r.field) = h.at(r.e[0], r.e[1], r.e[2]) * r.denom;
  return jet;
}

double eval_height(const MongeJet& jet, const Vec3& u) {
  const double u1 = u[0], u2 = u[1], u3 = u[2];
  return jet.k / 2 * (u1 * u1 + u2 * u2) + jet.k3 / 2 * u3 * u3 +
         jet.a / 6 * u1 * u1 * u1 + jet.b / 2 * u1 * u2 * u2 +
         jet.c / 6 * u2 * u2 * u2 + jet.d / 2 * u1 * u1 * u2 +
         jet.q003 / 6 * u3 * u3 * u3 + jet.q012 / 2 * u2 * u3 * u3 +
         jet.q111 * u1 * u2 * u3 + jet.q021 / 2 * u2 * u2 * u3 +
         jet.q102 / 2 * u1 * u3 * u3 + jet.q201 / 2 * u1 * u1 * u3 +
         jet.A / 24 * u1 * u1 * u1 * u1 + jet.B / 6 * u1 * u1 * u1 * u2 +
         jet.C / 4 * u1 * u1 * u2 * u2 + jet.D / 6 * u1 * u2 * u2 * u2 +
         jet.E / 24 * u2 * u2 * u2 * u2 + jet.Q004 / 24 * u3 * u3 * u3 * u3 +
         jet.Q013 / 6 * u2 * u3 * u3 * u3 + jet.Q103 / 6 * u1 * u3 * u3 * u3 +
         jet.Q022 / 4 * u2 * u2 * u3 * u3 + jet.Q202 / 4 * u1 * u1 * u3 * u3 +
         jet.Q112 / 2 * u1 * u2 * u3 * u3 + jet.Q031 / 6 * u2 * u2 * u2 * u3 +
         jet.Q301 / 6 * u1 * u1 * u1 * u3 + jet.Q121 / 2 * u1 * u2 * u2 * u3 +
         jet.Q211 / 2 * u1 * u1 * u2 * u3;
}

JetImmersion::JetImmersion(const MongeJet& jet) : jet_(jet), h_(height_poly(jet)) {
  for (int i = 0; i < 3; ++i) dh_[i] = h_.diff(i);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d2h_[i][j] = dh_[i].diff(j);
}

Vec4 JetImmersion::position(const Vec3& u) const {
  return Vec4(u[0], u[1], u[2], h_.eval(u));
}

void JetImmersion::derivatives(const Vec3& u, std::array<Vec4, 3>& d1,
                               std::array<std::array<Vec4, 3>, 3>& d2) const {
  for (int i = 0; i < 3; ++i) {
    d1[i] = Vec4::Zero();
    d1[i][i] = 1.0;
    d1[i][3] = dh_[i].eval(u);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      d2[i][j] = Vec4::Zero();
      d2[i][j][3] = d2h_[i][j].eval(u);
    }
}

GenericImmersion::GenericImmersion(PositionFn fn, double step)
    : fn_(std::move(fn)), step_(step) {}

Vec4 GenericImmersion::position(const Vec3& u) const { return fn_(u); }

void GenericImmersion::derivatives(const Vec3& u, std::array<Vec4, 3>& d1,
                                   std::array<std::array<Vec4, 3>, 3>& d2) const {
  const double h = step_ * (1.0 + u.norm());
  auto at = [&](int i, double hi, int j, double hj) {
    Vec3 v = u;
    v[i] += hi;
    v[j] += hj;
    return fn_(v);
  };
  for (int i = 0; i < 3; ++i)
    d1[i] = (at(i, h, i, 0) - at(i, -h, i, 0)) / (2.0 * h);
  Vec4 f0 = fn_(u);
  for (int i = 0; i < 3; ++i) {
    d2[i][i] = (at(i, h, i, 0) - 2.0 * f0 + at(i, -h, i, 0)) / (h * h);
    for (int j = i + 1; j < 3; ++j) {
      d2[i][j] = (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) +
                  at(i, -h, j, -h)) /
                 (4.0 * h * h);
      d2[j][i] = d2[i][j];
    }
  }
}

namespace {

// h composed with the plane rotation u1 = cos t v1 - sin t v2, u2 = sin t v1 + cos t v2.
Poly3 rotate_height(const Poly3& h, double angle) {
  const double cs = std::cos(angle), sn = std::sin(angle);
  std::array<Poly3, 3> lin = {Poly3(4), Poly3(4), Poly3(4)};
  lin[0].at(1, 0, 0) = cs;
  lin[0].at(0, 1, 0) = -sn;
  lin[1].at(1, 0, 0) = sn;
  lin[1].at(0, 1, 0) = cs;
  lin[2].at(0, 0, 1) = 1.0;
  return h.compose(lin);
}

double d_coeff_after_rotation(const Poly3& h, double angle) {
  return rotate_height(h, angle).at(2, 1, 0) * 2.0;
}

}  // namespace

MongeJet rotate_jet(const MongeJet& jet, double angle) {
  return jet_from_poly(rotate_height(height_poly(jet), angle));
}

RotationResult adapt_rotation(const MongeJet& raw) {
  RotationResult out;
  const double cubic_scale =
      std::max({std::abs(raw.a), std::abs(raw.b), std::abs(raw.c), std::abs(raw.d)});
  if (cubic_scale == 0.0) {
    out.jet = raw;
    out.degenerate = true;
    return out;
  }
  if (std::abs(raw.d) <= 1e-15 * cubic_scale) {
    out.jet = raw;
    return out;
  }
  Poly3 h = height_poly(raw);
  // d'(theta) is an odd trig polynomial over a half turn: scan for a bracket.
  const int n_scan = 64;
  double prev_t = 0.0, prev_v = d_coeff_after_rotation(h, 0.0);
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int i = 1; i <= n_scan; ++i) {
    double t = M_PI * i / n_scan;
    double v = d_coeff_after_rotation(h, t);
    if (prev_v == 0.0) {
      lo = hi = prev_t;
      found = true;
      break;
    }
    if (v == 0.0 || (prev_v < 0.0) != (v < 0.0)) {
      lo = prev_t;
      hi = t;
      found = true;
      break;
    }
    prev_t = t;
    prev_v = v;
  }
  if (!found) throw Error(Err::AllCubicsZero, "adapt_rotation: no sign change found");
  double flo = d_coeff_after_rotation(h, lo);
  while (hi - lo > 1e-13) {
    double mid = 0.5 * (lo + hi);
    double fm = d_coeff_after_rotation(h, mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((flo < 0.0) != (fm < 0.0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  double angle = 0.5 * (lo + hi);
  Poly3 hrot = rotate_height(h, angle);
  hrot.at(2, 1, 0) = 0.0;  // pin the adapted coefficient exactly
  out.jet = jet_from_poly(hrot);
  out.jet.d = 0.0;
  out.angle = angle;
  return out;
}

namespace {

// Monge jet of the image of (u,h(u)) under inversion centered at rho*e4,
// recentered at the image of the origin.  Exact truncated-series composition.
MongeJet invert_jet(const MongeJet& jet, double rho) {
  Poly3 h = height_poly(jet);
  // s = (|u|^2 - 2 rho h + h^2)/rho^2, so |x - c|^2 = rho^2 (1 + s)
  Poly3 s(4);
  s.at(2, 0, 0) = 1.0;
  s.at(0, 2, 0) = 1.0;
  s.at(0, 0, 2) = 1.0;
  s += h * (-2.0 * rho) + h.mul(h);
  s = s * (1.0 / (rho * rho));
  Poly3 one(4);
  one.at(0, 0, 0) = 1.0;
  Poly3 inv = (one + s).reciprocal() * (1.0 / (rho * rho));  // 1/|x-c|^2
  std::array<Poly3, 3> w;
  for (int i = 0; i < 3; ++i) {
    Poly3 ui(4);
    ui.at(i == 0 ? 1 : 0, i == 1 ? 1 : 0, i == 2 ? 1 : 0) = 1.0;
    w[i] = ui.mul(inv);
  }
  Poly3 hm(4);
  hm = h;
  hm.at(0, 0, 0) -= rho;
  Poly3 w4 = hm.mul(inv);
  w4.at(0, 0, 0) += 1.0 / rho;  // recenter: subtract w4(0) = -1/rho

  // Invert y = w(u) as a power series: u = G(y), then height = w4(G(y)).
  std::array<Poly3, 3> G, X;
  std::array<Poly3, 3> Y;
  for (int i = 0; i < 3; ++i) {
    Y[i] = Poly3(4);
    Y[i].at(i == 0 ? 1 : 0, i == 1 ? 1 : 0, i == 2 ? 1 : 0) = 1.0;
    G[i] = Y[i] * (rho * rho);  // first-order inverse: dI = diag(1,1,1,-1)/rho^2
  }
  for (int it = 0; it < 3; ++it) {
    // Newton on series: G <- G + J0^{-1} (y - w(G)); J0 = I/rho^2
    for (int i = 0; i < 3; ++i) X[i] = w[i].compose(G);
    for (int i = 0; i < 3; ++i) G[i] += (Y[i] - X[i]) * (rho * rho);
  }
  Poly3 hn = w4.compose(G);
  hn.at(0, 0, 0) = 0.0;  // roundoff
  hn.at(1, 0, 0) = 0.0;
  hn.at(0, 1, 0) = 0.0;
  hn.at(0, 0, 1) = 0.0;
  // The quadratic part stays diagonal with equal (1,1)/(2,2) entries because
  // the center lies on the normal axis; symmetrize roundoff before reading.
  double kk = 0.5 * (hn.at(2, 0, 0) + hn.at(0, 2, 0));
  hn.at(2, 0, 0) = kk;
  hn.at(0, 2, 0) = kk;
  hn.at(1, 1, 0) = 0.0;
  hn.at(1, 0, 1) = 0.0;
  hn.at(0, 1, 1) = 0.0;
  return jet_from_poly(hn, 1e-7);
}

double inverted_k(const MongeJet& jet, double rho) {
  Poly3 h = height_poly(jet);
  // cheap: only the u1^2 coefficient of the image is needed
  return invert_jet(jet, rho).k;
}

}  // namespace

MongeJet adapt_scale(const MongeJet& jet, ScaleTarget target) {
  if (target == ScaleTarget::K3ToOne) {
    if (jet.k3 == 0.0) throw Error(Err::ZeroCurvature, "adapt_scale: k3 = 0");
    if (jet.k3 == 1.0) return jet;
    // Homothety x -> k3 x (a reflection when k3 < 0): the image height is
    // g(v) = k3 h(v/k3), so a degree-d coefficient scales by k3^(1-d) and
    // curvatures divide by k3.
    Poly3 h = height_poly(jet);
    Poly3 g(4);
    const auto& monos = Poly3::monomials(4);
    for (int n = 0; n < h.size(); ++n) {
      int d = monos[n][0] + monos[n][1] + monos[n][2];
      g.coeffs()[n] = h.coeffs()[n] * std::pow(jet.k3, 1 - d);
    }
    return jet_from_poly(g, 1e-9);
  }
  // KToZero via inversion
  if (jet.k == 0.0) return jet;
  // Solve inverted_k(rho) = 0 by a bracketed secant over admissible rho.
  auto f = [&](double rho) { return inverted_k(jet, rho); };
  double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
  bool found = false;
  std::vector<double> grid;
  // leading order the image curvature is 2 rho - k rho^2, so the zero sits
  // near rho = 2/k; scan a log neighborhood of it plus a generic fallback
  const double rho_star = 2.0 / jet.k;
  for (double f = 0.25; f <= 4.0; f *= 1.12) grid.push_back(rho_star * f);
  for (double r = 0.2; r <= 50.0; r *= 1.25) {
    grid.push_back(r);
    grid.push_back(-r);
  }
  std::sort(grid.begin(), grid.end());
  double pv = 0.0, pr = 0.0;
  bool have_prev = false;
  for (double r : grid) {
    if (std::abs(r) < 1e-3) continue;
    double v;
    try {
      v = f(r);
    } catch (const Error&) {
      have_prev = false;
      continue;
    }
    if (have_prev && pr * r > 0.0 && (pv < 0.0) != (v < 0.0)) {
      lo = pr;
      hi = r;
      flo = pv;
      fhi = v;
      found = true;
      break;
    }
    pv = v;
    pr = r;
    have_prev = true;
  }
  if (!found)
    throw Error(Err::ZeroCurvature, "adapt_scale: no inversion center zeroes k");
  for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-14 * (1.0 + std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((flo < 0.0) != (fm < 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  MongeJet out = invert_jet(jet, 0.5 * (lo + hi));
  out.k = 0.0;
  if (std::abs(out.d) > 0.0) out = adapt_rotation(out).jet;  // restore adaptation
  return out;
}

}  // namespace pmb
