#include "pumb/forms.hpp"
#include "support.hpp"

using namespace pmb;
using namespace pmbtest;

TEST_CASE("forms at the origin of a Monge jet") {
  JetImmersion imm(J1());
  FormsSample fs = compute_forms(imm, Vec3::Zero());
  CHECK((fs.g - Mat3::Identity()).norm() < 1e-15);
  Mat3 lam = Mat3::Zero();
  lam(2, 2) = 1.0;
  CHECK((fs.lambda - lam).norm() < 1e-15);
  CHECK((fs.N - Vec4(0, 0, 0, 1)).norm() < 1e-15);

  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    JetImmersion im2(random_jet(rng));
    FormsSample f2 = compute_forms(im2, Vec3::Zero());
    CHECK((f2.g - Mat3::Identity()).norm() < 1e-15);  // chart tangent at 0
  }
}

TEST_CASE("wedge orientation matches the canonical basis") {
  Vec4 e1(1, 0, 0, 0), e2(0, 1, 0, 0), e3(0, 0, 1, 0);
  CHECK((wedge4(e1, e2, e3) - Vec4(0, 0, 0, 1)).norm() == 0.0);
  // antisymmetry
  CHECK((wedge4(e2, e1, e3) + Vec4(0, 0, 0, 1)).norm() == 0.0);
}

TEST_CASE("normal is unit and orthogonal to the tangent frame") {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    MongeJet j = random_jet(rng);
    JetImmersion imm(j);
    Vec3 u(urand(rng, -0.1, 0.1), urand(rng, -0.1, 0.1), urand(rng, -0.1, 0.1));
    FormsSample fs = compute_forms(imm, u);
    CHECK(std::abs(fs.N.norm() - 1.0) < 1e-12);
    std::array<Vec4, 3> d1;
    std::array<std::array<Vec4, 3>, 3> d2;
    imm.derivatives(u, d1, d2);
    for (int t = 0; t < 3; ++t) CHECK(std::abs(fs.N.dot(d1[t])) < 1e-10);
    CHECK(fs.g.isApprox(fs.g.transpose()));
    CHECK(fs.lambda.isApprox(fs.lambda.transpose()));
  }
}

TEST_CASE("rank-deficient parametrization is detected") {
  GenericImmersion degenerate(
      [](const Vec3& u) { return Vec4(u[0], u[1], u[0] + u[1], 0.0); }, 1e-6);
  CHECK_THROWS_AS(compute_forms(degenerate, Vec3::Zero()), Error);
}

TEST_CASE("oracle_forms anchors") {
  // g11 = 1 + k^2 u1^2 for a quadratic-only jet
  MongeJet j;
  j.k = 1;
  j.k3 = 2;
  double t = 0.05;
  FormsSample fs = oracle_forms(j, Vec3(t, 0, 0));
  CHECK(fs.g(0, 0) == doctest::Approx(1.0 + t * t).epsilon(1e-14));
  // identical to compute_forms at the origin
  JetImmersion imm(J1());
  FormsSample a = compute_forms(imm, Vec3::Zero());
  FormsSample b = oracle_forms(J1(), Vec3::Zero());
  CHECK((a.g - b.g).norm() < 1e-15);
  CHECK((a.lambda - b.lambda).norm() < 1e-15);
  CHECK((a.N - b.N).norm() < 1e-15);
}

TEST_CASE("compute vs oracle converges at third order (typo entries excepted)") {
  // convergence-order sweep on a single random jet; the acceptance suite runs
  // the full per-entry census over 200 jets
  Rng rng(9);
  MongeJet j = random_jet(rng);
  JetImmersion imm(j);
  Vec3 dir = Vec3(0.31, -0.42, 0.27).normalized();
  double prev = -1;
  for (double h : {4e-2, 2e-2, 1e-2}) {
    Vec3 u = h * dir;
    FormsSample num = compute_forms(imm, u);
    FormsSample orc = oracle_forms(j, u);
    double d = 0;
    // skip g13/lambda33: tabulated with quadratic-order slips
    for (int r = 0; r < 3; ++r)
      for (int c = r; c < 3; ++c) {
        if (!(r == 0 && c == 2)) d = std::max(d, std::abs(num.g(r, c) - orc.g(r, c)));
        if (!(r == 2 && c == 2))
          d = std::max(d, std::abs(num.lambda(r, c) - orc.lambda(r, c)));
      }
    if (prev > 0) {
      double order = std::log2(prev / d);
      CHECK(order > 2.6);
    }
    prev = d;
  }
}
