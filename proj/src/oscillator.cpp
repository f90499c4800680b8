#include "sorkinlab/oscillator.hpp"

#include <cmath>
#include <stdexcept>

#include "sorkinlab/quadrature.hpp"

namespace sorkinlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.4142135623730951;
}  // namespace

cplx osc_chi_closed(double s, double t, const Resolution& res) {
  const double z = kSqrt2 * s - t / kSqrt2;
  // indicator edges of R_{-t}, expressed in the scaled variable x = sqrt(2) v
  const double radius = 16.0;
  const Interval window{(z - radius) / kSqrt2, (z + radius) / kSqrt2};
  const IntervalSet r = r_t(res, -t, window);
  std::vector<double> breakpoints;
  for (const Interval& p : r.parts()) {
    breakpoints.push_back(kSqrt2 * p.lo);
    breakpoints.push_back(kSqrt2 * p.hi);
  }
  auto zeta = [&res, t](double x) {
    const double v = x / kSqrt2;
    return cplx(res.same_bin(v, v + t) ? 1.0 : 0.0, 0.0);  // v in R_{-t}
  };
  return std::exp(-t * t / 4.0) * weierstrass(zeta, cplx(z, 0.0), breakpoints);
}

cplx osc_chi_quadrature(double s, double t, const Resolution& res) {
  // rotated coordinates u = (x-y)/2, v = x+y; dx dy = du dv and the indicator
  // stripes align with the v axis
  const double v_half = 8.0 + std::abs(t) + std::abs(s);
  const double u_half = 6.0 + std::abs(s) + std::abs(t);
  const IntervalSet stripes = r_t(res, -t, Interval{-v_half, v_half});
  cplx acc{0.0, 0.0};
  for (const Interval& stripe : stripes.parts()) {
    auto outer = [&](double v) {
      auto inner = [&, v](double u) {
        const double x = u + 0.5 * v;
        const double y = 0.5 * v - u;
        const double a = x - s;
        const double e = -a * a - 0.5 * (y * y + (y + t) * (y + t));
        return cplx(std::exp(e) / kPi, 0.0);
      };
      return integrate(inner, -u_half, u_half, 1e-12).value;
    };
    acc += integrate(outer, stripe.lo, stripe.hi, 1e-11).value;
  }
  return acc;
}

cplx osc_chi_pure_point(double s, double t, double eps, const OscGridSpec& grid) {
  if (!(eps > 0.0)) throw std::invalid_argument("osc_chi_pure_point needs eps > 0");
  const double h = 2.0 * grid.half_width / (grid.nodes - 1);
  if (eps < 2.0 * h) {
    throw std::invalid_argument("osc_chi_pure_point: eps below the lattice resolution");
  }
  // sum_k 1_{S_k}(x,y) 1_{S_k}(x,y+t) with S_k the diagonal unions of eps
  // squares; membership reduces pointwise to the eps-cell comparison below
  auto cell = [eps](double w) { return static_cast<long>(std::floor(w / eps)); };
  double acc = 0.0;
  for (int i = 0; i < grid.nodes; ++i) {
    const double x = -grid.half_width + i * h;
    const double wx = (i == 0 || i == grid.nodes - 1) ? 0.5 : 1.0;
    const double gx = std::exp(-(x - s) * (x - s));
    for (int j = 0; j < grid.nodes; ++j) {
      const double y = -grid.half_width + j * h;
      if (cell(x) + cell(y) != cell(x) + cell(y + t)) continue;
      const double wy = (j == 0 || j == grid.nodes - 1) ? 0.5 : 1.0;
      acc += wx * wy * gx * std::exp(-0.5 * (y * y + (y + t) * (y + t)));
    }
  }
  return cplx(acc * h * h / kPi, 0.0);
}

double osc_pure_point_bound(double eps, const OscGridSpec& grid) {
  const double h = 2.0 * grid.half_width / (grid.nodes - 1);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < grid.nodes; ++i) {
    const double x = -grid.half_width + i * h;
    const double wx = (i == 0 || i == grid.nodes - 1) ? 0.5 : 1.0;
    const double xe = eps * std::floor(x / eps);
    for (int j = 0; j < grid.nodes; ++j) {
      const double y = -grid.half_width + j * h;
      const double wy = (j == 0 || j == grid.nodes - 1) ? 0.5 : 1.0;
      const double psi2 = std::exp(-(x * x + y * y)) / (kPi);
      num += wx * wy * (xe - x) * (xe - x) * psi2;
      den += wx * wy * psi2;
    }
  }
  return std::sqrt(num / den);
}

}  // namespace sorkinlab
