#pragma once

#include "sorkinlab/gaussian.hpp"
#include "sorkinlab/resolutions.hpp"

namespace sorkinlab {

// 2D oscillator ground state psi(x,y) = pi^(-1/2) exp(-(x^2+y^2)/2). Alice
// shifts x by s, Charlie ideally measures x+y with some resolution, Bob reads
// off e^{it p_y}.

// Closed form chi(s) = e^{-t^2/4} W{1_{R_-t}(./sqrt(2))}(sqrt(2) s - t/sqrt(2)),
// evaluated through r_t and the Weierstrass quadrature.
cplx osc_chi_closed(double s, double t, const Resolution& res);

// Independent 2D quadrature of 1_{R_-t}(x+y) psi(x-s,y) psi(x-s,y+t) with the
// domain split along the indicator stripes.
cplx osc_chi_quadrature(double s, double t, const Resolution& res);

struct OscGridSpec {
  double half_width = 9.0;  // window [-L, L]^2
  int nodes = 481;          // per axis
};

// Pure-point approximation O_eps = sum_k k eps 1_{S_k}(x,y): chi evaluated as
// the lattice sum of the shifted-overlap integrand with the S_k membership
// test applied pointwise. Throws when eps is below the lattice resolution.
cplx osc_chi_pure_point(double s, double t, double eps, const OscGridSpec& grid = {});

// ||(x_eps - x) psi|| / ||psi|| on the lattice; the operator bound is eps.
double osc_pure_point_bound(double eps, const OscGridSpec& grid = {});

}  // namespace sorkinlab
