#include "sorkinlab/kraus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sorkinlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void PairingContext::validate(double tol) const {
  if (w_ff < 0.0 || w_gg < 0.0) {
    throw std::invalid_argument("PairingContext: W(f,f) and W(g,g) must be >= 0");
  }
  const cplx gap = w_fg - w_gf - cplx(0.0, 1.0) * d_fg;
  if (std::abs(gap) > tol * std::max(1.0, std::abs(w_fg))) {
    std::ostringstream oss;
    oss << "PairingContext: W(f,g) - W(g,f) != i Delta(f,g), residual " << std::abs(gap);
    throw std::invalid_argument(oss.str());
  }
}

KrausFamily KrausFamily::unitary_linear() {
  KrausFamily f;
  f.variant_ = Variant::unitary_phase;
  f.phase_tag_ = PhaseTag::linear;
  f.theta_ = [](double l) { return l; };
  f.literal_ = "kick:linear";
  return f;
}

KrausFamily KrausFamily::unitary_square() {
  KrausFamily f;
  f.variant_ = Variant::unitary_phase;
  f.phase_tag_ = PhaseTag::square;
  f.theta_ = [](double l) { return l * l; };
  f.literal_ = "kick:square";
  return f;
}

KrausFamily KrausFamily::unitary_custom(std::function<double(double)> theta) {
  KrausFamily f;
  f.variant_ = Variant::unitary_phase;
  f.phase_tag_ = PhaseTag::custom;
  f.theta_ = std::move(theta);
  f.literal_ = "kick:custom";
  return f;
}

KrausFamily KrausFamily::ideal(Resolution res) {
  KrausFamily f;
  f.variant_ = Variant::ideal;
  f.res_ = std::move(res);
  f.literal_ = "ideal:" + f.res_->literal();
  return f;
}

KrausFamily KrausFamily::gaussian_weak(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_weak needs sigma > 0");
  KrausFamily f;
  f.variant_ = Variant::gaussian_weak;
  f.sigma_ = sigma;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "weak:sigma=%.17g", sigma);
  f.literal_ = buf;
  return f;
}

KrausFamily KrausFamily::l2_gaussian(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("l2_gaussian needs sigma > 0");
  KrausFamily f;
  f.variant_ = Variant::l2_kernel;
  f.sigma_ = sigma;
  const double norm = std::pow(2.0 * kPi * sigma * sigma, -0.25);
  f.kernel_ = [sigma, norm](double x) { return cplx(norm * std::exp(-x * x / (4.0 * sigma * sigma)), 0.0); };
  f.support_radius_ = 14.0 * sigma;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "l2:gaussian:sigma=%.17g", sigma);
  f.literal_ = buf;
  return f;
}

KrausFamily KrausFamily::l2_custom(std::function<cplx(double)> k, double support_radius) {
  if (!(support_radius > 0.0)) throw std::invalid_argument("l2_custom needs support_radius > 0");
  KrausFamily f;
  f.variant_ = Variant::l2_kernel;
  f.kernel_ = std::move(k);
  f.support_radius_ = support_radius;
  f.literal_ = "l2:custom";
  // normalisation condition: |k|^2 must integrate to 1
  auto k2 = [&f](double x) { return cplx(std::norm(f.kernel_(x)), 0.0); };
  const QuadratureResult q = integrate(k2, -support_radius, support_radius, 1e-12);
  if (std::abs(q.value.real() - 1.0) > 1e-8) {
    std::ostringstream oss;
    oss << "l2_custom kernel is not normalised: |k|^2 integrates to " << q.value.real();
    throw std::invalid_argument(oss.str());
  }
  return f;
}

const Resolution& KrausFamily::resolution() const {
  if (!res_) throw std::logic_error("KrausFamily: no resolution on this variant");
  return *res_;
}

KrausFamily KrausFamily::parse(const std::string& literal) {
  if (literal == "kick:linear") return unitary_linear();
  if (literal == "kick:square") return unitary_square();
  if (literal.rfind("ideal:", 0) == 0) return ideal(Resolution::parse(literal.substr(6)));
  if (literal.rfind("weak:sigma=", 0) == 0) return gaussian_weak(std::stod(literal.substr(11)));
  if (literal.rfind("l2:gaussian:sigma=", 0) == 0) {
    return l2_gaussian(std::stod(literal.substr(18)));
  }
  throw std::invalid_argument("unknown Kraus literal: " + literal);
}

std::string KrausFamily::literal() const { return literal_; }

cplx kappa_tilde(const KrausFamily& fam, double lambda, double shift) {
  switch (fam.variant_) {
    case KrausFamily::Variant::unitary_phase:
      return std::exp(cplx(0.0, fam.theta_(lambda) - fam.theta_(lambda + shift)));
    case KrausFamily::Variant::ideal:
      // indicator of R_{-shift}: lambda and lambda+shift share a bin
      return fam.res_->same_bin(lambda, lambda + shift) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    case KrausFamily::Variant::gaussian_weak:
      return cplx(std::exp(-shift * shift / (8.0 * fam.sigma_ * fam.sigma_)), 0.0);
    case KrausFamily::Variant::l2_kernel: {
      // autocorrelation of k, independent of lambda
      auto f = [&fam, shift](double g) { return fam.kernel_(g) * std::conj(fam.kernel_(g + shift)); };
      const double r = fam.support_radius_ + std::abs(shift);
      const QuadratureResult q = integrate(f, -r, r, 1e-12);
      if (!q.converged) {
        std::ostringstream oss;
        oss << "kappa_tilde: L2 autocorrelation quadrature failed (residual " << q.error << ")";
        throw std::runtime_error(oss.str());
      }
      return q.value;
    }
  }
  return cplx(0.0, 0.0);
}

CausalityVerdict causality_verdict(const KrausFamily& fam, double shift, const ProbeSpec& probe) {
  CausalityVerdict v;
  v.tolerance = probe.tolerance;
  if (shift == 0.0) return v;  // kappa~ = 1 identically

  switch (fam.variant()) {
    case KrausFamily::Variant::gaussian_weak:
    case KrausFamily::Variant::l2_kernel:
      return v;  // autocorrelations do not depend on lambda
    case KrausFamily::Variant::unitary_phase:
      if (fam.phase_tag() == KrausFamily::PhaseTag::linear) return v;
      break;
    case KrausFamily::Variant::ideal: {
      const IntervalSet r = r_t(fam.resolution(), -shift, probe.window);
      const double len = probe.window.length();
      const double ratio = r.measure() / len;
      if (ratio < 1e-12 || ratio > 1.0 - 1e-12) return v;  // null or conull on the window
      v.causal = false;
      // one point inside R_{-shift}, one outside
      const Interval& first = r.parts().front();
      const double inside = 0.5 * (std::max(first.lo, probe.window.lo) +
                                   std::min(first.hi, probe.window.hi));
      double outside = probe.window.lo;
      const double step = len / probe.samples;
      for (int i = 0; i <= probe.samples; ++i) {
        const double x = probe.window.lo + i * step;
        if (!r.contains(x)) {
          outside = x;
          break;
        }
      }
      v.witness = CausalityWitness{inside, outside, shift, 1.0};
      return v;
    }
  }

  // dense sampling over the probe window
  const double step = probe.window.length() / probe.samples;
  cplx k0 = kappa_tilde(fam, probe.window.lo, shift);
  double best_gap = 0.0;
  double best_l1 = probe.window.lo, best_l2 = probe.window.lo;
  for (int i = 1; i <= probe.samples; ++i) {
    const double l = probe.window.lo + i * step;
    const double gap = std::abs(kappa_tilde(fam, l, shift) - k0);
    if (gap > best_gap) {
      best_gap = gap;
      best_l1 = probe.window.lo;
      best_l2 = l;
    }
  }
  if (best_gap > probe.tolerance) {
    v.causal = false;
    v.witness = CausalityWitness{best_l1, best_l2, shift, best_gap};
  }
  return v;
}

cplx chi(const KrausFamily& fam, const PairingContext& ctx, double s, double t) {
  if (!(ctx.w_ff > 0.0)) throw std::invalid_argument("chi needs W(f,f) > 0");
  const double a = std::sqrt(ctx.w_ff / 2.0);
  const double shift = t * ctx.d_fg;
  const cplx z = (s * ctx.d_fh + cplx(0.0, 1.0) * t * ctx.w_fg) / a;

  std::vector<double> breakpoints;
  if (fam.variant() == KrausFamily::Variant::ideal) {
    // indicator edges of R_{-shift} in the scaled integration variable
    const double radius = std::sqrt(z.imag() * z.imag() + 150.0) * 2.0;
    const Interval window{a * (z.real() - radius), a * (z.real() + radius)};
    for (const Interval& p : r_t(fam.resolution(), -shift, window).parts()) {
      breakpoints.push_back(p.lo / a);
      breakpoints.push_back(p.hi / a);
    }
  }
  auto zeta = [&](double x) { return kappa_tilde(fam, a * x, shift); };
  return char_fn(t, ctx.w_gg) * weierstrass(zeta, z, breakpoints);
}

}  // namespace sorkinlab
