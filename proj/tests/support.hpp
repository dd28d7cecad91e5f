#pragma once

#include <random>

#include "doctest.h"
#include "pumb/classify.hpp"
#include "pumb/jet.hpp"

namespace pmbtest {

using namespace pmb;

// canonical fixtures
inline MongeJet J1() {
  MongeJet j;
  j.k3 = 1; j.a = 4; j.b = 1;
  return j;
}
inline MongeJet J2() {
  MongeJet j;
  j.k3 = 1; j.a = 1.5; j.b = 1;
  return j;
}
inline MongeJet J3() {
  MongeJet j;
  j.k3 = 1; j.a = 0.5; j.b = 1;
  return j;
}
inline MongeJet J4() {
  MongeJet j;
  j.k3 = 1; j.a = 2; j.b = 1; j.c = 1; j.Q211 = 1;
  return j;
}
inline MongeJet J5() {
  MongeJet j;
  j.k3 = 1; j.a = 1; j.b = 1; j.q201 = 1;
  return j;
}

inline double urand(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

// generic random jet: adapted (d = 0), k < k3 (the double pair below the
// simple curvature), T = b(b-a) bounded away from zero
inline MongeJet random_jet(Rng& rng, bool with_quartics = true) {
  MongeJet j;
  j.k = urand(rng, -0.5, 0.5);
  j.k3 = j.k + urand(rng, 0.4, 1.2);
  do {
    j.a = urand(rng, -2, 2);
    j.b = urand(rng, -2, 2);
  } while (std::abs(j.b) < 0.25 || std::abs(j.b - j.a) < 0.15 ||
           std::abs(j.a - 2 * j.b) < 0.1);
  j.c = urand(rng, -1.5, 1.5);
  for (const char* q : {"q003", "q012", "q021", "q102", "q111", "q201"})
    j.set(q, urand(rng, -1, 1));
  if (with_quartics)
    for (const char* q : {"A", "B", "C", "D", "E", "Q004", "Q013", "Q022", "Q031",
                          "Q103", "Q112", "Q121", "Q202", "Q211", "Q301"})
      j.set(q, urand(rng, -1, 1));
  return j;
}

inline MongeJet random_jet_of_kind(Rng& rng, PUKind kind) {
  for (int tries = 0; tries < 400; ++tries) {
    MongeJet j = random_jet(rng);
    double b = (rng() & 1 ? 1.0 : -1.0) * urand(rng, 0.4, 1.5);
    double half2 = 0.0, r = 0.0;
    switch (kind) {
      case PUKind::D1:
        j.b = b;
        half2 = std::pow(j.c / (2 * b), 2);
        j.a = b * (half2 + 2 + urand(rng, 0.3, 1.5));
        break;
      case PUKind::D2:
        j.b = b;
        half2 = std::pow(j.c / (2 * b), 2);
        do {
          r = urand(rng, 1.1, half2 + 1.9);
        } while (std::abs(r - 2) < 0.1);
        j.a = b * r;
        break;
      case PUKind::D3:
        j.b = b;
        j.a = b * urand(rng, -1.0, 0.85);
        break;
      case PUKind::D12:
        j.b = b;
        j.a = 2 * b;
        if (std::abs(j.c) < 0.2) j.c = (rng() & 1 ? 0.5 : -0.5);
        break;
      case PUKind::D23:
        j.b = b;
        j.a = b;
        break;
      default:
        break;
    }
    try {
      if (classify_point(j).kind == kind) return j;
    } catch (const Error&) {
    }
  }
  throw std::runtime_error("random_jet_of_kind: rejection sampling failed");
}

}  // namespace pmbtest
