#pragma once

#include <limits>
#include <string>
#include <vector>

namespace sorkinlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Half-open interval [lo, hi). Endpoints may be +-inf.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return !(lo < hi); }
  double length() const { return empty() ? 0.0 : hi - lo; }
  bool contains(double x) const { return x >= lo && x < hi; }
  bool operator==(const Interval& o) const = default;
};

Interval intersect(const Interval& a, const Interval& b);

// Finite union of disjoint half-open intervals, kept sorted and canonical
// (overlapping or touching parts merged, degenerate parts dropped).
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);
  IntervalSet(std::initializer_list<Interval> parts);

  static IntervalSet whole();

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(double x) const;
  double measure() const;  // sum of lengths; +inf for unbounded parts
  bool bounded() const;
  // Hull extent hi-lo; 0 for the empty set, +inf if unbounded.
  double hull_width() const;

  IntervalSet translated(double t) const;

  friend IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet unite(const IntervalSet& a, const IntervalSet& b);

  bool operator==(const IntervalSet& o) const { return parts_ == o.parts_; }

  std::string str() const;

 private:
  void canonicalize();
  std::vector<Interval> parts_;
};

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet unite(const IntervalSet& a, const IntervalSet& b);

inline double measure(const IntervalSet& s) { return s.measure(); }

}  // namespace sorkinlab
