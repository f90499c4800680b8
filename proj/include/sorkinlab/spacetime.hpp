#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "sorkinlab/intervals.hpp"

namespace sorkinlab {

// Event in 1+1 Minkowski, natural units. Lightcone coordinates u = t-x, v = t+x.
struct Event2D {
  double t = 0.0;
  double x = 0.0;
  double u() const { return t - x; }
  double v() const { return t + x; }
};

// x strictly precedes y iff y is in the closed future lightcone of x (lightlike
// pairs count as related).
inline bool causally_precedes(const Event2D& a, const Event2D& b) {
  const double dt = b.t - a.t;
  const double dx = b.x - a.x;
  return dt > 0.0 && dt * dt >= dx * dx;
}

inline bool spacelike(const Event2D& a, const Event2D& b) {
  return !causally_precedes(a, b) && !causally_precedes(b, a);
}

using PointSet = std::vector<int>;  // sorted, unique causal-set indices

// Finite partially ordered set. The stored relation is the strict order
// (irreflexive, transitively closed); reflexive queries go through leq().
class CausalSet {
 public:
  CausalSet() = default;
  // Builds the transitive closure of the given strict relations and verifies
  // acyclicity.
  static CausalSet from_relations(int n, const std::vector<std::pair<int, int>>& edges,
                                  std::optional<std::vector<Event2D>> coords = std::nullopt);

  int size() const { return n_; }
  bool precedes(int x, int y) const { return rel_[static_cast<std::size_t>(x) * n_ + y] != 0; }
  bool leq(int x, int y) const { return x == y || precedes(x, y); }
  const std::optional<std::vector<Event2D>>& coords() const { return coords_; }

  // A permutation p with p[k] = point index at label k, such that relations
  // only go from smaller to larger labels.
  std::vector<int> natural_labelling() const;

  bool relation_is_transitively_closed() const;

  // Strict causal matrix C with C[x][y] = 1 iff y precedes x (the orientation
  // used by retarded propagators).
  std::vector<double> strict_causal_matrix_past() const;

 private:
  int n_ = 0;
  std::vector<std::uint8_t> rel_;  // rel_[x*n+y] = 1 iff x strictly precedes y
  std::optional<std::vector<Event2D>> coords_;
};

// Poisson sprinkling into the rectangle t_range x x_range at the given density.
// Point count ~ Poisson(density * area), positions i.i.d. uniform; points are
// sorted by time so the stored relation is strictly upper triangular.
CausalSet sprinkle(const Interval& t_range, const Interval& x_range, double density,
                   std::uint64_t seed);

enum class Direction { future, past };

// J+(S) or J-(S), reflexive: the result always contains S.
PointSet future_past(const CausalSet& cs, const PointSet& s, Direction dir);

enum class RegionSide { in, out };

// K- = C \ J+(K) (in-region) or K+ = C \ J-(K) (out-region).
PointSet in_out_region(const CausalSet& cs, const PointSet& k, RegionSide side);

struct TransitivityResult {
  bool transitive = true;
  // (x, z, y) with x,y outside K, z inside, x < z < y in the order but x !< y.
  std::optional<std::array<int, 3>> witness;
};

TransitivityResult is_transitive(const CausalSet& cs, const PointSet& k);

bool is_causally_convex(const CausalSet& cs, const PointSet& r);

// Plain-text persistence: header "causet n=<N>", one "id t x" line per point
// (bare "id" when the set has no coordinates), then "a<b" lines holding the
// transitive reduction. Loading rebuilds the closure.
void save_causet(const CausalSet& cs, std::ostream& os);
CausalSet load_causet(std::istream& is);

}  // namespace sorkinlab
