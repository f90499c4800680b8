#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace sorkinlab {

using cplx = std::complex<double>;

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  long evaluations = 0;
  bool converged = true;
};

// Adaptive Gauss-Kronrod (G7,K15) on a finite interval.
QuadratureResult integrate(const std::function<cplx(double)>& f, double a, double b,
                           double abs_tol = 1e-12, int max_depth = 40);

// Same, but the domain is first split at the given interior breakpoints
// (integrand discontinuities, e.g. indicator edges).
QuadratureResult integrate_split(const std::function<cplx(double)>& f, double a, double b,
                                 const std::vector<double>& breakpoints,
                                 double abs_tol = 1e-12, int max_depth = 40);

}  // namespace sorkinlab
