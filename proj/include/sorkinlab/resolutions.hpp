#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sorkinlab/intervals.hpp"

namespace sorkinlab {

// A resolution is a family of mutually disjoint bins covering the real line.
// Supported families: integer-like uniform bins, threshold bins cut at finitely
// many points, Smith-Volterra-Cantor (fat Cantor) bins at finite depth, and
// explicit finite bin lists. Uniform bins are enumerated lazily so the family
// stays countably infinite; the others carry their full bin list.
class Resolution {
 public:
  enum class Kind { uniform, threshold, svc, explicit_bins };

  static Resolution uniform(double width, double offset = 0.0);
  static Resolution threshold(std::vector<double> cuts);
  static Resolution svc(int depth);
  static Resolution explicit_list(std::vector<IntervalSet> bins);

  // Literal syntax: "uniform:w=1,o=0", "threshold:0,1.5", "svc:d=3",
  // "explicit:[0,1);[1,inf)" (use '|' for a union within one bin).
  static Resolution parse(const std::string& literal);
  std::string literal() const;

  Kind kind() const { return kind_; }
  double uniform_width() const { return width_; }

  // Bins whose closure meets the window, as concrete interval sets.
  std::vector<IntervalSet> bins_meeting(const Interval& window) const;

  // Index of the (unique) bin containing x. For uniform bins this is the
  // integer floor((x-offset)/width); for list families the list position.
  long long locate(double x) const;
  bool same_bin(double a, double b) const;

  // Largest hull extent among bounded bins; 0 when every bin is unbounded.
  double max_bounded_bin_width() const;

 private:
  Resolution() = default;
  void validate_list() const;

  Kind kind_ = Kind::uniform;
  double width_ = 1.0;
  double offset_ = 0.0;
  std::vector<double> cuts_;
  int depth_ = 0;
  std::vector<IntervalSet> bins_;
};

// The self-overlap set R_t = union_n B_n cap (B_n + t), intersected with the
// bounded window D. R_0 = R, so r_t(res, 0, D) = D.
IntervalSet r_t(const Resolution& res, double t, const Interval& window);

struct NontrivialityResult {
  double t_star = 0.0;
  double measure_ratio = 0.0;  // lambda(D cap R_t*) / lambda(D), in (0,1)
};

// Finds a shift t* at which R_t* is neither null nor conull on the window:
// coarse scan of L(t) = lambda(D cap R_t) followed by bisection toward
// L = lambda(D)/2, which continuity of L makes reachable.
NontrivialityResult nontriviality_search(const Resolution& res, const Interval& window);

// |L(t+delta) - L(t)| for each probe offset.
std::vector<double> continuity_probe(const Resolution& res, const Interval& window,
                                     double t, const std::vector<double>& deltas);

}  // namespace sorkinlab
