#pragma once

#include "pumb/liecartan.hpp"

namespace pmb {

enum class Foliation { F1, F2, F3 };
const char* foliation_name(Foliation f);

enum class Termination { Boundary, NearS, MaxLength, ChartSwitchLimit, Stationary };
const char* termination_name(Termination t);

struct Polyline {
  std::string foliation;          // "F1", "F2", "F3" or "LC-orbit"
  Termination termination = Termination::MaxLength;
  std::vector<Vec3> points;       // chart coordinates
  std::vector<Vec3> dirs;         // unit field direction at each point (F-traces)
  std::vector<double> slope;      // LC orbits: P (P-chart value) per point
  std::vector<Vec4> embedded;     // optional alpha(u)
  double arclength = 0;
};

struct TraceParams {
  double max_arclen = 0.6;
  double box_radius = 0.35;
  double atol = 1e-9;
  double rtol = 1e-9;
  double h0 = 1e-3;
  double hmin = 1e-11;
  double hmax = 2e-2;
  double eps_umb = -1.0;       // default: 1e-8 (1+|k3|)
  double max_proj_arclen = 0;  // LC orbits: stop when the projection reaches this
  bool embed = false;
  int time_direction = +1;     // initial orientation sign
  SimpleBranch branch = SimpleBranch::Largest;
};

// Integrates a principal line of the selected foliation from the seed.
// F1/F2 follow the restricted-quadratic roots (ordered by normal curvature),
// F3 follows the simple principal direction.  Direction continuity is kept by
// matching roots and signs against the previous tangent.
Polyline trace_principal_line(const MongeJet& jet, const Vec3& seed, Foliation which,
                              const TraceParams& params = {});

// Integrates the suspension field from a state on (or near) the Lie-Cartan
// hypersurface, with one Newton re-projection per accepted step and chart
// switching at |P| > 10.
Polyline trace_lc_orbit(const MongeJet& jet, const LCState& state0,
                        const TraceParams& params = {}, int max_chart_switches = 8);

struct LeafFamily {
  std::string branch_label;
  std::vector<Polyline> leaves;  // each oriented so the last point is nearest S
  std::vector<int> sides;       // +1 / -1 displacement side per leaf
  bool partial = false;         // non-hyperbolic center direction skipped
};

struct SeparatrixParams {
  TraceParams trace;
  double displacement = 1e-5;
  double arc_range = 0.04;
};

// Shoots the invariant-manifold fibers of a normally hyperbolic branch from
// eigenvector displacements at n_leaves points along the branch.
// Saddle-node branches yield the strong-stable family only (partial = true);
// undetermined branches throw NotNormallyHyperbolic.
LeafFamily trace_separatrix_family(const MongeJet& jet, const SingularBranch& branch,
                                   int n_leaves, const SeparatrixParams& params = {});

struct SectorCensus {
  struct Ray {
    double angle = 0;      // direction in the (e1,e2) section frame
    double slope = 0;      // fiber slope it came from
    bool confirmed = false;
  };
  std::vector<Ray> rays;           // candidate separatrix rays (both signs)
  int separatrix_rays = 0;         // confirmed
  int wedge_sectors = 0;           // contiguous asymptotic ring arcs (>= 2 seeds)
  int hyperbolic_sectors = 0;      // pass-by runs delimited by rays/wedges
  int asymptotic_clusters = 0;     // confirmed rays treated mod pi + wedges
  std::vector<int> ring_flags;     // 1 = asymptotic seed
  std::vector<double> ring_angles;
};

struct CensusParams {
  TraceParams trace;
  int ring_seeds = 64;
  double approach_dist = 1e-4;
  double angular_bin = 5.0 * M_PI / 180.0;
};

// Heuristic census of the foliation in a transversal disc centered at a
// partially umbilic point (qualitative diagnostic, not a proof).
SectorCensus sector_census(const MongeJet& jet, const Vec3& p_on_S, double radius,
                           Foliation which, const CensusParams& params = {});

}  // namespace pmb
