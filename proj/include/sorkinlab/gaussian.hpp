#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "sorkinlab/intervals.hpp"
#include "sorkinlab/quadrature.hpp"

namespace sorkinlab {

// Ground-state functional calculus for a single smeared field: all quantities
// are closed forms in the pairings W(f,f), W(g,g), W(f,g).

// <phi(f)^n> = (n-1)!! W(f,f)^(n/2) for even n, 0 for odd n.
double moment(int n, double w_ff);

// <e^{it phi(f)}> = exp(-t^2 W(f,f)/2).
double char_fn(double t, double w_ff);

// Data of the complex density q(lambda) behind <zeta(phi(f)) e^{it phi(g)}>:
// a Gaussian of width sqrt(w_ff) shifted by i*t*w_fg off the real axis.
struct QContext {
  double w_ff = 1.0;  // W(f,f) > 0
  double w_gg = 0.0;  // W(g,g) >= 0
  cplx w_fg{0.0, 0.0};
  double t = 0.0;
};

cplx density_q(const QContext& ctx, double lambda);

// <zeta(phi(f)) e^{it phi(g)}> = integral of zeta against q, by adaptive
// quadrature on a window of +-10 widths around the shifted centre, expanded
// until the Gaussian tail bound drops below 1e-12. Breakpoints split the
// domain at integrand discontinuities (indicator edges).
cplx expect_zeta_exp(const std::function<cplx(double)>& zeta, const QContext& ctx,
                     const std::vector<double>& breakpoints = {});

// Weierstrass transform W{zeta}(z) = (4 pi)^(-1/2) integral e^{-(x-z)^2/4} zeta(x) dx,
// complex z, integrated along the real axis with the shift folded into the kernel.
cplx weierstrass(const std::function<cplx(double)>& zeta, cplx z,
                 const std::vector<double>& breakpoints = {});

// Closed form of the Weierstrass transform of an interval-set indicator at
// real argument (erf differences); used as a fast path and as a cross-check.
double weierstrass_indicator(const IntervalSet& s, double z);

// Same expectation through the Weierstrass route:
// e^{-t^2 w_gg/2} W{zeta(sqrt(w_ff/2) .)}(z), z = i t sqrt(2/w_ff) w_fg.
cplx expect_via_weierstrass(const std::function<cplx(double)>& zeta, const QContext& ctx,
                            const std::vector<double>& breakpoints = {});

// Fourier transform F{zeta}(t) = (2 pi)^(-1/2) integral e^{itx} zeta(x) dx over [a,b].
cplx fourier(const std::function<cplx(double)>& zeta, double t, double a, double b,
             const std::vector<double>& breakpoints = {});

}  // namespace sorkinlab
