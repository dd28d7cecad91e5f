#include <random>

#include "support.hpp"

using namespace pmb;
using namespace pmbtest;

namespace {

// independent oracle: brute-force monomial sum with its own coefficient table
double height_oracle(const MongeJet& j, const Vec3& u) {
  struct Term {
    double v;
    int e1, e2, e3;
    double den;
  };
  const Term terms[] = {
      {j.k, 2, 0, 0, 2},    {j.k, 0, 2, 0, 2},    {j.k3, 0, 0, 2, 2},
      {j.a, 3, 0, 0, 6},    {j.b, 1, 2, 0, 2},    {j.c, 0, 3, 0, 6},
      {j.d, 2, 1, 0, 2},    {j.q003, 0, 0, 3, 6}, {j.q012, 0, 1, 2, 2},
      {j.q111, 1, 1, 1, 1}, {j.q021, 0, 2, 1, 2}, {j.q102, 1, 0, 2, 2},
      {j.q201, 2, 0, 1, 2}, {j.A, 4, 0, 0, 24},   {j.B, 3, 1, 0, 6},
      {j.C, 2, 2, 0, 4},    {j.D, 1, 3, 0, 6},    {j.E, 0, 4, 0, 24},
      {j.Q004, 0, 0, 4, 24}, {j.Q013, 0, 1, 3, 6}, {j.Q103, 1, 0, 3, 6},
      {j.Q022, 0, 2, 2, 4}, {j.Q202, 2, 0, 2, 4}, {j.Q112, 1, 1, 2, 2},
      {j.Q031, 0, 3, 1, 6}, {j.Q301, 3, 0, 1, 6}, {j.Q121, 1, 2, 1, 2},
      {j.Q211, 2, 1, 1, 2},
  };
  double s = 0;
  for (const Term& t : terms)
    s += t.v / t.den * std::pow(u[0], t.e1) * std::pow(u[1], t.e2) *
         std::pow(u[2], t.e3);
  return s;
}

}  // namespace

TEST_CASE("eval_height anchors") {
  Rng rng1(1);
  MongeJet j = random_jet(rng1);
  CHECK(eval_height(j, Vec3(0, 0, 0)) == 0.0);

  MongeJet axis;
  axis.k3 = 1;
  CHECK(eval_height(axis, Vec3(0, 0, 0.3)) == doctest::Approx(0.3 * 0.3 / 2));

  // J1 at (0.1, 0.2, 0): (4/6)(0.1)^3 + (1/2)(0.1)(0.2)^2
  CHECK(eval_height(J1(), Vec3(0.1, 0.2, 0)) ==
        doctest::Approx(4.0 / 6 * 0.001 + 0.5 * 0.1 * 0.04).epsilon(1e-14));
}

TEST_CASE("eval_height agrees with the monomial-sum oracle") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    MongeJet j = random_jet(rng);
    j.d = urand(rng, -1, 1);
    Vec3 u(urand(rng, -1, 1), urand(rng, -1, 1), urand(rng, -1, 1));
    double got = eval_height(j, u);
    double want = height_oracle(j, u);
    CHECK(got == doctest::Approx(want).epsilon(1e-14));
    // the polynomial path agrees too
    CHECK(height_poly(j).eval(u) == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("JetImmersion derivatives match finite differences of the graph") {
  Rng rng(3);
  MongeJet j = random_jet(rng);
  JetImmersion imm(j);
  GenericImmersion gen([&](const Vec3& u) { return imm.position(u); }, 1e-6);
  Vec3 u(0.05, -0.08, 0.02);
  std::array<Vec4, 3> d1a, d1b;
  std::array<std::array<Vec4, 3>, 3> d2a, d2b;
  imm.derivatives(u, d1a, d2a);
  gen.derivatives(u, d1b, d2b);
  for (int i = 0; i < 3; ++i) {
    CHECK((d1a[i] - d1b[i]).norm() < 1e-8);
    for (int k = 0; k < 3; ++k) CHECK((d2a[i][k] - d2b[i][k]).norm() < 1e-5);
  }
}

TEST_CASE("adapt_rotation removes d and is idempotent") {
  SUBCASE("already adapted is returned unchanged") {
    MongeJet j = J1();
    RotationResult r = adapt_rotation(j);
    CHECK(r.angle == 0.0);
    CHECK(r.jet.d == 0.0);
    CHECK(r.jet.a == j.a);
  }
  SUBCASE("pure-d cubic") {
    MongeJet j;
    j.k3 = 1;
    j.d = 1;
    RotationResult r = adapt_rotation(j);
    CHECK(r.jet.d == 0.0);
    CHECK(!r.degenerate);
    // verify via finite differences of the rotated height function
    JetImmersion imm(r.jet);
    auto f = [&](const Vec3& u) { return eval_height(r.jet, u); };
    const double h = 1e-3;
    double mixed = 0;  // d^3 h / du1^2 du2
    for (int s1 : {-1, 0, 1})
      for (int s2 : {-1, 1}) {
        double w1 = s1 == 0 ? -2.0 : 1.0;
        mixed += w1 * s2 * f(Vec3(s1 * h, s2 * h, 0)) / (2 * h * h * h);
      }
    CHECK(std::abs(mixed) < 1e-6);
  }
  SUBCASE("degenerate cubic flags") {
    MongeJet j;
    j.k3 = 1;
    RotationResult r = adapt_rotation(j);
    CHECK(r.degenerate);
  }
  SUBCASE("idempotent to 1e-12") {
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
      MongeJet j = random_jet(rng);
      j.d = urand(rng, -1.5, 1.5);
      MongeJet once = adapt_rotation(j).jet;
      MongeJet twice = adapt_rotation(once).jet;
      for (const char* n : MongeJet::coeff_names())
        CHECK(std::abs(once.get(n) - twice.get(n)) < 1e-12);
    }
  }
}

TEST_CASE("adapt_scale homothety and inversion") {
  SUBCASE("k3 already one: identity") {
    MongeJet j = J1();
    MongeJet s = adapt_scale(j, ScaleTarget::K3ToOne);
    CHECK(s.a == j.a);
    CHECK(s.k3 == 1.0);
  }
  SUBCASE("k3 = 2 rescales to 1") {
    MongeJet j = J1();
    j.k3 = 2;
    MongeJet s = adapt_scale(j, ScaleTarget::K3ToOne);
    CHECK(s.k3 == doctest::Approx(1.0));
    CHECK(s.a == doctest::Approx(j.a / 4.0));  // cubic coefficients scale by k3^-2
    CHECK(s.A == doctest::Approx(j.A / 8.0));  // quartics by k3^-3
  }
  SUBCASE("zero curvature throws") {
    MongeJet j;
    CHECK_THROWS_AS(adapt_scale(j, ScaleTarget::K3ToOne), Error);
  }
  SUBCASE("k already zero: identity") {
    MongeJet j = J1();
    MongeJet s = adapt_scale(j, ScaleTarget::KToZero);
    CHECK(s.a == j.a);
  }
  SUBCASE("inversion zeroes k") {
    Rng rng(5);
    MongeJet j = random_jet(rng);
    j.k = 0.4;
    j.k3 = 1.3;
    MongeJet s = adapt_scale(j, ScaleTarget::KToZero);
    CHECK(s.k == 0.0);
    CHECK(std::abs(s.d) < 1e-9);
    CHECK(std::abs(s.k3) > 1e-3);  // still partially umbilic
  }
}

TEST_CASE("classification is invariant under adaptation maps") {
  Rng rng(17);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    MongeJet j = random_jet(rng);
    PUClassification base;
    try {
      base = classify_point(j);
    } catch (const Error&) {
      continue;
    }
    if (base.kind == PUKind::NonGeneric || base.kind == PUKind::Umbilic) continue;
    ++checked;

    MongeJet rot = adapt_rotation(rotate_jet(j, 0.3)).jet;
    CHECK(classify_point(rot).kind == base.kind);

    MongeJet sc = adapt_scale(j, ScaleTarget::K3ToOne);
    CHECK(classify_point(sc).kind == base.kind);

    if (i % 7 == 0) {
      MongeJet inv = adapt_scale(j, ScaleTarget::KToZero);
      CHECK(classify_point(inv).kind == base.kind);
    }
  }
  CHECK(checked > 50);
}
