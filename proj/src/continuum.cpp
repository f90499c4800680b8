#include "sorkinlab/continuum.hpp"

#include <cmath>
#include <stdexcept>

#include "sorkinlab/quadrature.hpp"

namespace sorkinlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// nonzero support of a field as (index, weighted value) pairs
struct SupportPoint {
  Event2D p;
  double wv;  // quadrature weight times field value
};

std::vector<SupportPoint> support(const GridField& f) {
  std::vector<SupportPoint> out;
  for (int i = 0; i < f.grid.nt; ++i) {
    for (int j = 0; j < f.grid.nx; ++j) {
      const double v = f.at(i, j);
      if (v != 0.0) out.push_back(SupportPoint{f.grid.point(i, j), f.grid.weight(i, j) * v});
    }
  }
  return out;
}

int support_extent_nodes(const GridField& f) {
  // crude resolution check: number of nodes across the widest support row
  int best = 0;
  for (int i = 0; i < f.grid.nt; ++i) {
    int lo = -1, hi = -1;
    for (int j = 0; j < f.grid.nx; ++j) {
      if (f.at(i, j) != 0.0) {
        if (lo < 0) lo = j;
        hi = j;
      }
    }
    if (lo >= 0) best = std::max(best, hi - lo + 1);
  }
  return best;
}

}  // namespace

GridField bump(const Grid2D& grid, const Event2D& centre, double radius, double amplitude) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump needs radius > 0");
  GridField f;
  f.grid = grid;
  f.values.assign(grid.size(), 0.0);
  for (int i = 0; i < grid.nt; ++i) {
    for (int j = 0; j < grid.nx; ++j) {
      const double dt = grid.t(i) - centre.t;
      const double dx = grid.x(j) - centre.x;
      const double r2 = (dt * dt + dx * dx) / (radius * radius);
      if (r2 < 1.0) f.values[grid.index(i, j)] = amplitude * std::exp(1.0 - 1.0 / (1.0 - r2));
    }
  }
  return f;
}

double retarded_kernel(double mass, const Event2D& x, const Event2D& y) {
  const double dt = x.t - y.t;
  const double dx = x.x - y.x;
  if (dt < 0.0) return 0.0;
  const double q = dt * dt - dx * dx;
  if (q < 0.0) return 0.0;
  const double body = (mass > 0.0) ? std::cyl_bessel_j(0.0, mass * std::sqrt(q)) : 1.0;
  // lightcone nodes carry half weight; the coincident point vanishes by
  // antisymmetry of Delta and is set to zero one level up
  const double theta = (dt == 0.0 || q == 0.0) ? 0.5 : 1.0;
  return 0.5 * theta * body;
}

double pauli_jordan_kernel(double mass, const Event2D& x, const Event2D& y) {
  if (x.t == y.t && x.x == y.x) return 0.0;
  return retarded_kernel(mass, y, x) - retarded_kernel(mass, x, y);
}

DeltaPairingResult continuum_delta_pairing(const GridField& f, const GridField& g, double mass) {
  DeltaPairingResult out;
  const int rf = support_extent_nodes(f);
  const int rg = support_extent_nodes(g);
  if ((rf > 0 && rf < 5) || (rg > 0 && rg < 5)) {
    out.warning = "grid too coarse to resolve a test-function support";
  }
  const auto sf = support(f);
  const auto sg = support(g);
  double acc = 0.0;
  for (const auto& a : sf) {
    for (const auto& b : sg) {
      acc += a.wv * pauli_jordan_kernel(mass, a.p, b.p) * b.wv;
    }
  }
  out.value = acc;
  return out;
}

GridField apply_pauli_jordan(const Grid2D& target, const GridField& f, double mass) {
  const auto sf = support(f);
  GridField out;
  out.grid = target;
  out.values.assign(target.size(), 0.0);
  for (int i = 0; i < target.nt; ++i) {
    for (int j = 0; j < target.nx; ++j) {
      const Event2D p = target.point(i, j);
      double acc = 0.0;
      for (const auto& a : sf) acc += pauli_jordan_kernel(mass, p, a.p) * a.wv;
      out.values[target.index(i, j)] = acc;
    }
  }
  return out;
}

std::complex<double> continuum_w_pairing(const GridField& f, const GridField& g, double mass) {
  if (!(mass > 0.0)) {
    throw std::invalid_argument(
        "continuum_w_pairing: massless 1+1 two-point function is IR divergent; mass must be > 0");
  }
  const auto sf = support(f);
  const auto sg = support(g);
  if (sf.empty() || sg.empty()) return 0.0;

  auto ft = [](const std::vector<SupportPoint>& s, double w, double k) {
    cplx acc{0.0, 0.0};
    for (const auto& a : s) acc += a.wv * std::exp(cplx(0.0, w * a.p.t - k * a.p.x));
    return acc;
  };
  auto integrand = [&](double k) {
    const double w = std::sqrt(k * k + mass * mass);
    return std::conj(ft(sf, w, k)) * ft(sg, w, k) / (4.0 * kPi * w);
  };

  // grow the symmetric k-window until a further shell stops contributing
  cplx total{0.0, 0.0};
  double k_hi = 4.0 * mass + 8.0;
  QuadratureResult core = integrate(integrand, -k_hi, k_hi, 1e-11);
  total = core.value;
  for (int shell = 0; shell < 24; ++shell) {
    const double k_next = k_hi * 1.6;
    const QuadratureResult right = integrate(integrand, k_hi, k_next, 1e-12);
    const QuadratureResult left = integrate(integrand, -k_next, -k_hi, 1e-12);
    total += right.value + left.value;
    k_hi = k_next;
    if (std::abs(right.value) + std::abs(left.value) < 1e-10) break;
  }
  return total;
}

}  // namespace sorkinlab
