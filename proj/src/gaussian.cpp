#include "sorkinlab/gaussian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sorkinlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTailTol = 1e-12;

cplx cexp(cplx z) { return std::exp(z); }

void require_converged(const QuadratureResult& q, const char* what) {
  if (!q.converged) {
    std::ostringstream oss;
    oss << what << ": quadrature failed to converge (residual estimate " << q.error << ")";
    throw std::runtime_error(oss.str());
  }
}

}  // namespace

double moment(int n, double w_ff) {
  if (n < 0) throw std::invalid_argument("moment order must be >= 0");
  if (w_ff < 0.0) throw std::invalid_argument("moment needs W(f,f) >= 0");
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  double dfac = 1.0;
  for (int k = n - 1; k > 1; k -= 2) dfac *= k;
  return dfac * std::pow(w_ff, n / 2.0);
}

double char_fn(double t, double w_ff) {
  if (w_ff < 0.0) throw std::invalid_argument("char_fn needs W(f,f) >= 0");
  return std::exp(-0.5 * t * t * w_ff);
}

cplx density_q(const QContext& ctx, double lambda) {
  if (!(ctx.w_ff > 0.0)) throw std::invalid_argument("density_q: degenerate width W(f,f)");
  const cplx shift = cplx(0.0, 1.0) * ctx.t * ctx.w_fg;
  const cplx d = lambda - shift;
  return std::exp(-0.5 * ctx.t * ctx.t * ctx.w_gg) / std::sqrt(2.0 * kPi * ctx.w_ff) *
         cexp(-d * d / (2.0 * ctx.w_ff));
}

cplx expect_zeta_exp(const std::function<cplx(double)>& zeta, const QContext& ctx,
                     const std::vector<double>& breakpoints) {
  if (!(ctx.w_ff > 0.0)) throw std::invalid_argument("expect_zeta_exp: degenerate width W(f,f)");
  const double sigma = std::sqrt(ctx.w_ff);
  const cplx shift = cplx(0.0, 1.0) * ctx.t * ctx.w_fg;
  const double centre = shift.real();
  // |q| grows by exp(Im(shift)^2 / 2 w_ff) relative to the real Gaussian; the
  // window must beat that factor in the tail bound.
  const double boost = 0.5 * shift.imag() * shift.imag() / ctx.w_ff;
  double radius = 10.0 * sigma + std::abs(shift.imag());
  auto tail = [&](double r) {
    return std::exp(boost) * std::erfc(r / (std::sqrt(2.0) * sigma));
  };
  while (tail(radius) > kTailTol) radius *= 1.4;

  auto integrand = [&](double x) { return zeta(x) * density_q(ctx, x); };
  QuadratureResult q =
      integrate_split(integrand, centre - radius, centre + radius, breakpoints, 1e-13);
  require_converged(q, "expect_zeta_exp");
  return q.value;
}

cplx weierstrass(const std::function<cplx(double)>& zeta, cplx z,
                 const std::vector<double>& breakpoints) {
  const double centre = z.real();
  const double boost = 0.25 * z.imag() * z.imag();
  double radius = std::sqrt(z.imag() * z.imag() + 150.0);
  auto tail = [&](double r) { return std::exp(boost) * std::erfc(0.5 * r); };
  while (tail(radius) > kTailTol) radius *= 1.3;

  const double norm = 1.0 / std::sqrt(4.0 * kPi);
  auto integrand = [&](double x) {
    const cplx d = x - z;
    return norm * cexp(-d * d / 4.0) * zeta(x);
  };
  QuadratureResult q =
      integrate_split(integrand, centre - radius, centre + radius, breakpoints, 1e-13);
  require_converged(q, "weierstrass");
  return q.value;
}

double weierstrass_indicator(const IntervalSet& s, double z) {
  double acc = 0.0;
  for (const Interval& p : s.parts()) {
    const double hi = std::isfinite(p.hi) ? std::erf(0.5 * (p.hi - z)) : 1.0;
    const double lo = std::isfinite(p.lo) ? std::erf(0.5 * (p.lo - z)) : -1.0;
    acc += 0.5 * (hi - lo);
  }
  return acc;
}

cplx expect_via_weierstrass(const std::function<cplx(double)>& zeta, const QContext& ctx,
                            const std::vector<double>& breakpoints) {
  if (!(ctx.w_ff > 0.0)) {
    throw std::invalid_argument("expect_via_weierstrass: degenerate width W(f,f)");
  }
  const double a = std::sqrt(ctx.w_ff / 2.0);
  const cplx z = cplx(0.0, 1.0) * ctx.t * ctx.w_fg / a;
  auto scaled = [&, a](double x) { return zeta(a * x); };
  std::vector<double> scaled_bps;
  scaled_bps.reserve(breakpoints.size());
  for (double b : breakpoints) scaled_bps.push_back(b / a);
  return char_fn(ctx.t, ctx.w_gg) * weierstrass(scaled, z, scaled_bps);
}

cplx fourier(const std::function<cplx(double)>& zeta, double t, double a, double b,
             const std::vector<double>& breakpoints) {
  auto integrand = [&](double x) { return cexp(cplx(0.0, t * x)) * zeta(x); };
  QuadratureResult q = integrate_split(integrand, a, b, breakpoints, 1e-13);
  require_converged(q, "fourier");
  return q.value / std::sqrt(2.0 * kPi);
}

}  // namespace sorkinlab
