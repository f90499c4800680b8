#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sorkinlab/intervals.hpp"
#include "sorkinlab/spacetime.hpp"

namespace sorkinlab {

// Uniform node lattice on [t0,t1] x [x0,x1] with trapezoidal quadrature
// weights. Row-major storage, index(i,j) = i*nx + j with i the time index.
struct Grid2D {
  double t0 = 0.0, t1 = 1.0, x0 = 0.0, x1 = 1.0;
  int nt = 2, nx = 2;

  double dt() const { return (t1 - t0) / (nt - 1); }
  double dx() const { return (x1 - x0) / (nx - 1); }
  double t(int i) const { return t0 + i * dt(); }
  double x(int j) const { return x0 + j * dx(); }
  Event2D point(int i, int j) const { return Event2D{t(i), x(j)}; }
  int index(int i, int j) const { return i * nx + j; }
  int size() const { return nt * nx; }
  double weight(int i, int j) const {
    const double wt = (i == 0 || i == nt - 1) ? 0.5 : 1.0;
    const double wx = (j == 0 || j == nx - 1) ? 0.5 : 1.0;
    return wt * wx * dt() * dx();
  }
};

struct GridField {
  Grid2D grid;
  std::vector<double> values;  // grid.size() entries

  double at(int i, int j) const { return values[grid.index(i, j)]; }
};

// Smooth compactly supported bump exp(1 - 1/(1 - r^2)) of unit peak, r the
// Euclidean (t,x) distance from the centre over the radius.
GridField bump(const Grid2D& grid, const Event2D& centre, double radius, double amplitude = 1.0);

// Retarded Green kernel of the 1+1 Klein-Gordon operator,
// G+(x,y) = (1/2) theta(dt) theta(dt^2 - dx^2) J0(m sqrt(dt^2 - dx^2)).
// On the lightcone itself theta is taken as 1/2 (a measure-zero quadrature
// convention that restores second-order accuracy of lattice sums).
double retarded_kernel(double mass, const Event2D& x, const Event2D& y);

// Delta(x,y) = G+(y,x) - G+(x,y).
double pauli_jordan_kernel(double mass, const Event2D& x, const Event2D& y);

struct DeltaPairingResult {
  double value = 0.0;
  std::string warning;  // set when a support looks unresolved on its grid
};

// Delta(f,g) by the lattice double sum with trapezoidal weights. The fields
// may live on different grids.
DeltaPairingResult continuum_delta_pairing(const GridField& f, const GridField& g, double mass);

// (Delta f)(p) sampled on the target grid.
GridField apply_pauli_jordan(const Grid2D& target, const GridField& f, double mass);

// Mass-shell two-point pairing
//   W(f,g) = integral dk (4 pi w_k)^-1 F[f](w_k,k)^* F[g](w_k,k),
// w_k = sqrt(k^2 + m^2), with F the spacetime Fourier transform
// F[h](w,k) = integral dt dx e^{i(w t - k x)} h(t,x). Massless input is
// rejected (the 1+1 massless two-point function is infrared divergent).
std::complex<double> continuum_w_pairing(const GridField& f, const GridField& g, double mass);

}  // namespace sorkinlab
