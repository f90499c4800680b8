#include "sorkinlab/intervals.hpp"

#include <algorithm>
#include <cstdio>

namespace sorkinlab {

Interval intersect(const Interval& a, const Interval& b) {
  return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) {
  canonicalize();
}

IntervalSet::IntervalSet(std::initializer_list<Interval> parts) : parts_(parts) {
  canonicalize();
}

IntervalSet IntervalSet::whole() { return IntervalSet{Interval{-kInf, kInf}}; }

void IntervalSet::canonicalize() {
  parts_.erase(std::remove_if(parts_.begin(), parts_.end(),
                              [](const Interval& p) { return p.empty(); }),
               parts_.end());
  std::sort(parts_.begin(), parts_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const Interval& p : parts_) {
    if (!merged.empty() && p.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, p.hi);
    } else {
      merged.push_back(p);
    }
  }
  parts_ = std::move(merged);
}

bool IntervalSet::contains(double x) const {
  // parts_ sorted by lo; binary search for the candidate part
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](double v, const Interval& p) { return v < p.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const Interval& p : parts_) m += p.length();
  return m;
}

bool IntervalSet::bounded() const {
  return parts_.empty() ||
         (parts_.front().lo > -kInf && parts_.back().hi < kInf);
}

double IntervalSet::hull_width() const {
  if (parts_.empty()) return 0.0;
  return parts_.back().hi - parts_.front().lo;
}

IntervalSet IntervalSet::translated(double t) const {
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const Interval& p : parts_) out.push_back(Interval{p.lo + t, p.hi + t});
  return IntervalSet(std::move(out));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < a.parts_.size() && j < b.parts_.size()) {
    Interval c = intersect(a.parts_[i], b.parts_[j]);
    if (!c.empty()) out.push_back(c);
    if (a.parts_[i].hi < b.parts_[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out = a.parts_;
  out.insert(out.end(), b.parts_.begin(), b.parts_.end());
  return IntervalSet(std::move(out));
}

std::string IntervalSet::str() const {
  if (parts_.empty()) return "{}";
  std::string s;
  char buf[80];
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += "|";
    std::snprintf(buf, sizeof(buf), "[%g,%g)", parts_[i].lo, parts_[i].hi);
    s += buf;
  }
  return s;
}

}  // namespace sorkinlab
