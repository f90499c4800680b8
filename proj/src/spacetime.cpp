#include "sorkinlab/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sorkinlab {

namespace {

bool in_set(const PointSet& s, int x) {
  return std::binary_search(s.begin(), s.end(), x);
}

PointSet sorted_unique(PointSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

CausalSet CausalSet::from_relations(int n, const std::vector<std::pair<int, int>>& edges,
                                    std::optional<std::vector<Event2D>> coords) {
  if (n < 0) throw std::invalid_argument("causal set size must be >= 0");
  if (coords && static_cast<int>(coords->size()) != n) {
    throw std::invalid_argument("coordinate count does not match point count");
  }
  CausalSet cs;
  cs.n_ = n;
  cs.rel_.assign(static_cast<std::size_t>(n) * n, 0);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("edge index out of range");
    if (a == b) throw std::invalid_argument("relation must be irreflexive");
    cs.rel_[static_cast<std::size_t>(a) * n + b] = 1;
  }
  // Warshall closure
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!cs.precedes(i, k)) continue;
      for (int j = 0; j < n; ++j) {
        if (cs.precedes(k, j)) cs.rel_[static_cast<std::size_t>(i) * n + j] = 1;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (cs.precedes(i, i)) throw std::invalid_argument("relation has a directed cycle");
  }
  cs.coords_ = std::move(coords);
  return cs;
}

std::vector<int> CausalSet::natural_labelling() const {
  // Kahn topological sort; acyclicity guarantees it completes.
  std::vector<int> indeg(n_, 0);
  for (int x = 0; x < n_; ++x) {
    for (int y = 0; y < n_; ++y) {
      if (precedes(x, y)) ++indeg[y];
    }
  }
  std::vector<int> order;
  order.reserve(n_);
  std::vector<int> ready;
  for (int i = n_ - 1; i >= 0; --i) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    int x = ready.back();
    ready.pop_back();
    order.push_back(x);
    for (int y = 0; y < n_; ++y) {
      if (precedes(x, y) && --indeg[y] == 0) ready.push_back(y);
    }
  }
  if (static_cast<int>(order.size()) != n_) throw std::logic_error("cycle in causal set");
  return order;
}

bool CausalSet::relation_is_transitively_closed() const {
  for (int x = 0; x < n_; ++x) {
    for (int y = 0; y < n_; ++y) {
      if (!precedes(x, y)) continue;
      for (int z = 0; z < n_; ++z) {
        if (precedes(y, z) && !precedes(x, z)) return false;
      }
    }
  }
  return true;
}

std::vector<double> CausalSet::strict_causal_matrix_past() const {
  std::vector<double> c(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int x = 0; x < n_; ++x) {
    for (int y = 0; y < n_; ++y) {
      if (precedes(y, x)) c[static_cast<std::size_t>(x) * n_ + y] = 1.0;
    }
  }
  return c;
}

CausalSet sprinkle(const Interval& t_range, const Interval& x_range, double density,
                   std::uint64_t seed) {
  if (!(density > 0.0) || !std::isfinite(density)) {
    throw std::invalid_argument("sprinkle needs finite density > 0");
  }
  const double area = t_range.length() * x_range.length();
  std::mt19937_64 rng(seed);
  int n = 0;
  if (area > 0.0) {
    std::poisson_distribution<int> pois(density * area);
    n = pois(rng);
  }
  std::vector<Event2D> pts(n);
  std::uniform_real_distribution<double> ut(t_range.lo, t_range.hi);
  std::uniform_real_distribution<double> ux(x_range.lo, x_range.hi);
  for (auto& p : pts) {
    p.t = ut(rng);
    p.x = ux(rng);
  }
  std::sort(pts.begin(), pts.end(), [](const Event2D& a, const Event2D& b) {
    return a.t < b.t || (a.t == b.t && a.x < b.x);
  });
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (causally_precedes(pts[i], pts[j])) edges.emplace_back(i, j);
    }
  }
  return CausalSet::from_relations(n, edges, std::move(pts));
}

PointSet future_past(const CausalSet& cs, const PointSet& s_in, Direction dir) {
  PointSet s = sorted_unique(s_in);
  PointSet out = s;
  for (int y = 0; y < cs.size(); ++y) {
    if (in_set(s, y)) continue;
    for (int x : s) {
      const bool related = (dir == Direction::future) ? cs.precedes(x, y) : cs.precedes(y, x);
      if (related) {
        out.push_back(y);
        break;
      }
    }
  }
  return sorted_unique(std::move(out));
}

PointSet in_out_region(const CausalSet& cs, const PointSet& k, RegionSide side) {
  const PointSet reach =
      future_past(cs, k, side == RegionSide::out ? Direction::past : Direction::future);
  PointSet out;
  for (int x = 0; x < cs.size(); ++x) {
    if (!in_set(reach, x)) out.push_back(x);
  }
  return out;
}

TransitivityResult is_transitive(const CausalSet& cs, const PointSet& k_in) {
  // K is transitive when every x outside K with x < z for some z in K
  // precedes every y outside K with z' < y for some z' in K (the connectors
  // need not coincide; with a shared connector the poset order itself would
  // make every subset transitive).
  const PointSet k = sorted_unique(k_in);
  std::vector<int> past_connector(static_cast<std::size_t>(cs.size()), -1);
  std::vector<char> feeds_future(static_cast<std::size_t>(cs.size()), 0);
  for (int x = 0; x < cs.size(); ++x) {
    if (in_set(k, x)) continue;
    for (int z : k) {
      if (cs.precedes(x, z)) {
        past_connector[static_cast<std::size_t>(x)] = z;
        break;
      }
    }
    for (int z : k) {
      if (cs.precedes(z, x)) {
        feeds_future[static_cast<std::size_t>(x)] = 1;
        break;
      }
    }
  }
  for (int x = 0; x < cs.size(); ++x) {
    const int z = past_connector[static_cast<std::size_t>(x)];
    if (z < 0) continue;
    for (int y = 0; y < cs.size(); ++y) {
      if (!feeds_future[static_cast<std::size_t>(y)]) continue;
      if (!cs.leq(x, y)) {
        return TransitivityResult{false, std::array<int, 3>{x, z, y}};
      }
    }
  }
  return TransitivityResult{true, std::nullopt};
}

bool is_causally_convex(const CausalSet& cs, const PointSet& r_in) {
  const PointSet r = sorted_unique(r_in);
  for (int y = 0; y < cs.size(); ++y) {
    if (in_set(r, y)) continue;
    for (int x : r) {
      if (!cs.precedes(x, y)) continue;
      for (int z : r) {
        if (cs.precedes(y, z)) return false;
      }
    }
  }
  return true;
}

void save_causet(const CausalSet& cs, std::ostream& os) {
  const int n = cs.size();
  os << "causet n=" << n << "\n";
  char buf[96];
  for (int i = 0; i < n; ++i) {
    if (cs.coords()) {
      const Event2D& p = (*cs.coords())[i];
      std::snprintf(buf, sizeof(buf), "%d %.17g %.17g\n", i, p.t, p.x);
      os << buf;
    } else {
      os << i << "\n";
    }
  }
  // transitive reduction: keep x<y only when no z has x<z<y
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!cs.precedes(x, y)) continue;
      bool covered = false;
      for (int z = 0; z < n && !covered; ++z) {
        if (cs.precedes(x, z) && cs.precedes(z, y)) covered = true;
      }
      if (!covered) os << x << "<" << y << "\n";
    }
  }
}

CausalSet load_causet(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty causet file");
  int n = 0;
  if (std::sscanf(line.c_str(), "causet n=%d", &n) != 1) {
    throw std::runtime_error("bad causet header: " + line);
  }
  std::vector<Event2D> coords(n);
  bool have_coords = false, have_bare = false;
  for (int i = 0; i < n; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("truncated causet point list");
    std::istringstream ls(line);
    int id = -1;
    ls >> id;
    if (id != i) throw std::runtime_error("causet points must be listed in id order");
    double t, x;
    if (ls >> t >> x) {
      coords[i] = Event2D{t, x};
      have_coords = true;
    } else {
      have_bare = true;
    }
  }
  if (have_coords && have_bare) throw std::runtime_error("mixed coordinate lines in causet file");
  std::vector<std::pair<int, int>> edges;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int a, b;
    if (std::sscanf(line.c_str(), "%d<%d", &a, &b) != 2) {
      throw std::runtime_error("bad causet edge line: " + line);
    }
    edges.emplace_back(a, b);
  }
  return CausalSet::from_relations(
      n, edges, have_coords ? std::optional<std::vector<Event2D>>(std::move(coords)) : std::nullopt);
}

}  // namespace sorkinlab
