#include "pumb/restricted.hpp"
#include "support.hpp"

using namespace pmb;
using namespace pmbtest;

namespace {

RestrictedSample at(const MongeJet& j, const Vec3& u) {
  JetImmersion imm(j);
  FormsSample fs = compute_forms(imm, u);
  PrincipalData pd = principal_solve(fs);
  PlaneFieldSample pf = plane_field(fs, pd.k3);
  return restrict_forms(fs, pf);
}

}  // namespace

TEST_CASE("restricted forms at a partially umbilic origin degenerate") {
  RestrictedSample rs = at(J1(), Vec3::Zero());
  CHECK(rs.Er == doctest::Approx(1.0));
  CHECK(rs.Gr == doctest::Approx(1.0));
  CHECK(std::abs(rs.Fr) < 1e-14);
  CHECK(std::abs(rs.er) < 1e-14);  // k = 0
  CHECK(std::abs(rs.fr) < 1e-14);
  CHECK(std::abs(rs.gr) < 1e-14);
  CHECK(std::abs(rs.Lr) < 1e-14);
  CHECK(std::abs(rs.Mr) < 1e-14);
  CHECK(std::abs(rs.Nr) < 1e-14);
  CHECK_THROWS_AS(slope_quadratic_roots(rs), Error);
}

TEST_CASE("leading terms of Mr and Lr along the axes for J1") {
  for (double t : {1e-3, 5e-4}) {
    RestrictedSample rs = at(J1(), Vec3(t, 0, 0));
    CHECK(rs.Mr == doctest::Approx((J1().b - J1().a) * t).epsilon(2e-2));
    RestrictedSample rs2 = at(J1(), Vec3(0, t, 0));
    CHECK(rs2.Lr == doctest::Approx(-J1().b * t).epsilon(2e-2));
  }
}

TEST_CASE("restricted oracle matches the pipeline to third order (fr excepted)") {
  Rng rng(71);
  MongeJet j = random_jet(rng);
  Vec3 dir = Vec3(-0.3, 0.45, 0.2).normalized();
  double prev = -1;
  for (double h : {4e-2, 2e-2, 1e-2}) {
    RestrictedSample num = at(j, h * dir);
    RestrictedSample orc = oracle_restricted(j, h * dir);
    double d = std::max({std::abs(num.Er - orc.Er), std::abs(num.Fr - orc.Fr),
                         std::abs(num.Gr - orc.Gr), std::abs(num.er - orc.er),
                         std::abs(num.gr - orc.gr)});
    if (prev > 0) CHECK(std::log2(prev / d) > 2.6);
    prev = d;
  }
}

TEST_CASE("oracle anchors") {
  Rng rng(81);
  MongeJet j = random_jet(rng);
  RestrictedSample rs = oracle_restricted(j, Vec3::Zero());
  CHECK(rs.Er == 1.0);
  CHECK(rs.Gr == 1.0);
  CHECK(rs.Fr == 0.0);
  CHECK(rs.er == j.k);
  CHECK(rs.gr == j.k);
  CHECK(rs.fr == 0.0);
  // fr = b u2 + O(2) along u2
  double t = 1e-3;
  CHECK(oracle_restricted(j, Vec3(0, t, 0)).fr ==
        doctest::Approx(j.b * t).epsilon(2e-2));
}

TEST_CASE("slope roots: plain quadratics") {
  RestrictedSample rs;
  rs.er = 1;  // scale reference
  rs.Lr = 1;
  rs.Mr = 0;
  rs.Nr = -1;
  SlopeRoots r = slope_quadratic_roots(rs);
  CHECK(r.count == 2);
  CHECK(r.P[0] == doctest::Approx(-1.0));
  CHECK(r.P[1] == doctest::Approx(1.0));

  rs.Lr = 0;
  rs.Mr = 1;
  rs.Nr = -2;
  SlopeRoots r2 = slope_quadratic_roots(rs);
  CHECK(r2.root_at_infinity);
  CHECK(r2.count == 1);
  CHECK(r2.P[0] == doctest::Approx(2.0));
}

TEST_CASE("lifted roots reproduce the principal directions") {
  JetImmersion imm(J1());
  Vec3 u(0.01, 0.02, 0.03);
  FormsSample fs = compute_forms(imm, u);
  PrincipalData pd = principal_solve(fs);
  PlaneFieldSample pf = plane_field(fs, pd.k3);
  RestrictedSample rs = restrict_forms(fs, pf);
  SlopeRoots roots = slope_quadratic_roots(rs);
  REQUIRE(roots.count == 2);
  for (int i = 0; i < 2; ++i) {
    Vec3 v = lift_slope(pf, roots.P[i]);
    CHECK(std::abs(v.dot(fs.g * pd.e3)) / v.norm() < 1e-7);
    double a1 = std::abs(v.normalized().dot(pd.e1.normalized()));
    double a2 = std::abs(v.normalized().dot(pd.e2.normalized()));
    CHECK(std::max(a1, a2) > 1.0 - 1e-7);  // parallel to e1 or e2
  }
}

TEST_CASE("quadratic discriminant is nonnegative at generic points") {
  Rng rng(91);
  for (int i = 0; i < 40; ++i) {
    MongeJet j = random_jet(rng);
    Vec3 u(urand(rng, -0.05, 0.05), urand(rng, -0.05, 0.05), urand(rng, -0.05, 0.05));
    RestrictedSample rs = at(j, u);
    double scale = std::max({std::abs(rs.Lr), std::abs(rs.Mr), std::abs(rs.Nr), 1e-30});
    CHECK(rs.Mr * rs.Mr - 4 * rs.Lr * rs.Nr > -1e-12 * scale * scale);
  }
}

TEST_CASE("Jacobian determinant of (Lr, Mr) at the origin is b(b-a)") {
  Rng rng(101);
  for (int i = 0; i < 8; ++i) {
    MongeJet j = random_jet(rng);
    const double h = 1e-5;
    Eigen::Matrix2d J;
    for (int col = 0; col < 2; ++col) {
      Vec3 up = Vec3::Zero(), dn = Vec3::Zero();
      up[col] += h;
      dn[col] -= h;
      RestrictedSample rp = at(j, up), rn = at(j, dn);
      J(0, col) = (rp.Lr - rn.Lr) / (2 * h);
      J(1, col) = (rp.Mr - rn.Mr) / (2 * h);
    }
    CHECK(J.determinant() == doctest::Approx(j.b * (j.b - j.a)).epsilon(1e-6));
  }
}
