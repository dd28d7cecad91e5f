#pragma once

#include "pumb/common.hpp"
#include "pumb/jet.hpp"

namespace pmb {

// First/second fundamental form and unit normal at a point.
struct FormsSample {
  Mat3 g;       // g_ij = <alpha_i, alpha_j>
  Mat3 lambda;  // lambda_ij = <alpha_ij, N>
  Vec4 N;       // unit normal, orientation fixed by the canonical basis of R^4
};

// Generalized cross product: <a^b^c, x> = det[a; b; c; x].
Vec4 wedge4(const Vec4& a, const Vec4& b, const Vec4& c);

// Forms from first/second derivatives of the immersion.
// Throws RankDeficient when D(alpha) drops below rank 3.
FormsSample compute_forms(const ImmersionField& imm, const Vec3& u);

// Truncated Taylor series of g, N, lambda around the origin of a Monge jet,
// evaluated verbatim from the tabulated closed forms.  Valid for small |u|;
// truncation error is O(|u|^3) (forms) / O(|u|^4) (g, N).
FormsSample oracle_forms(const MongeJet& jet, const Vec3& u);

// Names of oracle entries whose tabulated series are known to disagree with
// direct computation below the advertised order (kept verbatim on purpose;
// the convergence suite re-detects and reports them).
const std::vector<std::string>& known_series_discrepancies();

}  // namespace pmb
