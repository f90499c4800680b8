#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "sorkinlab/continuum.hpp"
#include "sorkinlab/kraus.hpp"
#include "sorkinlab/propagators.hpp"
#include "sorkinlab/spacetime.hpp"

namespace sorkinlab {

// Alice kicks with phi(h) in K-, Charlie updates through phi(f) in K, Bob
// measures e^{it phi(g)} in K+ spacelike to Alice.
struct SorkinScenario {
  Eigen::VectorXd f, h, g;
  PointSet k;
  int x_plus = -1;   // support point of g
  int x_minus = -1;  // support point of h
  PairingContext ctx;
};

struct BuildResult {
  std::optional<SorkinScenario> scenario;
  std::string reason;  // explains a "no Sorkin scenario" outcome
};

// Causal-set flavour: requires a non-transitive K, computes Delta f, and
// scans K+ x K- for a spacelike pair inside supp(Delta f). h and g become
// unit vectors at the witness points.
BuildResult build_scenario(const CausalSet& cs, const PropagatorSet& props,
                           const ModeBasis& modes, const Eigen::VectorXd& f, const PointSet& k);

// The minimal four-point causet A < 1, 2 < B (points labelled 0,1,2,3) on
// which Sorkin's scenario can be posed.
CausalSet fig7_causet();

struct SignalScan {
  std::vector<cplx> chi_values;
  double max_gap = 0.0;  // max_s |chi(s) - chi(0)|, the s-grid must contain 0
};

SignalScan signal_scan(const SorkinScenario& sc, const KrausFamily& fam, double t,
                       const std::vector<double>& s_grid);

// The phi(f)^2 unitary-kick closed form: Bob measures e^{it phi(g)}, Charlie
// kicks with phi(f)^2, Alice with s phi(h). Then with g~ = g - 2 Delta(f,g) f,
//   rhs = e^{-t^2 W(g~,g~)/2},  lhs = e^{-i 2 s t Delta(f,g) Delta(f,h)} rhs.
struct Phi2ClosedForm {
  cplx lhs;
  cplx rhs;
};

Phi2ClosedForm closed_form_phi2(const PairingContext& ctx, double s, double t);
// vector-aware overload building W(g~,g~) from the full test vectors
Phi2ClosedForm closed_form_phi2(const PropagatorSet& props, const ModeBasis& modes,
                                const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                                const Eigen::VectorXd& h, double s, double t);

// ---- continuum (1+1 Minkowski) scenario ----

struct Rect {
  Interval t_range;
  Interval x_range;
};

bool in_past_cone_of(const Event2D& p, const Rect& k);    // p in J^-(K)
bool in_future_cone_of(const Event2D& p, const Rect& k);  // p in J^+(K)

struct ContinuumScenario {
  Event2D x_plus, x_minus;  // spacelike pair in K+/- inside supp(Delta f)
  GridField h, g;           // bumps at the witness points (empty when mass = 0)
  std::optional<PairingContext> ctx;  // pairings need mass > 0
};

struct ContinuumBuildResult {
  std::optional<ContinuumScenario> scenario;
  std::string reason;
};

// Scans the grid for spacelike points of K+ and K- where Delta f is resolvably
// nonzero; for massive fields it also places bump test functions there and
// assembles the full pairing context.
ContinuumBuildResult build_scenario_continuum(const Grid2D& domain, const GridField& f,
                                              double mass, const Rect& k,
                                              double bump_radius = 0.25);

// ---- massless lightcone decomposition (phi = U(u) + V(v)) ----

struct MasslessDecomposition {
  std::vector<double> u_coords, u_values;  // U on the grid's u-diagonals
  std::vector<double> v_coords, v_values;  // V on the grid's v-diagonals
  double residual = 0.0;                   // max |phi - U - V| on the checked sublattice
};

// Requires a square lattice (dt = dx). U(u) = phi(u, v0) - phi(u0, v0) and
// V(v) = phi(u0, v) for a reference diagonal pair through the grid centre;
// the residual is evaluated on the parity-compatible sublattice. Throws when
// the residual exceeds the tolerance (input is not a wave solution).
MasslessDecomposition massless_decompose(const GridField& phi, double tolerance = 1e-6);

}  // namespace sorkinlab
