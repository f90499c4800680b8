#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>

#include "sorkinlab/gaussian.hpp"
#include "sorkinlab/resolutions.hpp"

namespace sorkinlab {

// All bilinear data of one Alice/Charlie/Bob scenario. Every chi(s) formula is
// a closed form in these scalars.
struct PairingContext {
  double d_fg = 0.0;  // Delta(f,g)
  double d_fh = 0.0;  // Delta(f,h)
  double d_gh = 0.0;  // Delta(g,h), zero for spacelike h,g
  double w_ff = 1.0;
  double w_gg = 0.0;
  cplx w_fg{0.0, 0.0};
  cplx w_gf{0.0, 0.0};

  // asserts w_fg - w_gf = i d_fg and nonnegative diagonal pairings
  void validate(double tol = 1e-10) const;
};

// One-operator Kraus family kappa(lambda, gamma). The update map it generates
// is E(X) = integral dnu(gamma) kappa(phi(f),gamma) X kappa(phi(f),gamma)^+.
class KrausFamily {
 public:
  enum class Variant { unitary_phase, ideal, gaussian_weak, l2_kernel };
  enum class PhaseTag { linear, square, custom };

  static KrausFamily unitary_linear();  // theta(l) = l
  static KrausFamily unitary_square();  // theta(l) = l^2
  static KrausFamily unitary_custom(std::function<double(double)> theta);
  static KrausFamily ideal(Resolution res);
  static KrausFamily gaussian_weak(double sigma);
  static KrausFamily l2_gaussian(double sigma);
  // k must be normalised in L2; support_radius bounds where |k| matters.
  static KrausFamily l2_custom(std::function<cplx(double)> k, double support_radius);

  // Literal syntax: "kick:linear", "kick:square", "ideal:<resolution>",
  // "weak:sigma=0.5", "l2:gaussian:sigma=0.5".
  static KrausFamily parse(const std::string& literal);
  std::string literal() const;

  Variant variant() const { return variant_; }
  PhaseTag phase_tag() const { return phase_tag_; }
  const Resolution& resolution() const;
  double sigma() const { return sigma_; }
  double theta(double lambda) const { return theta_(lambda); }

  friend cplx kappa_tilde(const KrausFamily& fam, double lambda, double shift);

 private:
  KrausFamily() = default;

  Variant variant_ = Variant::unitary_phase;
  PhaseTag phase_tag_ = PhaseTag::linear;
  std::function<double(double)> theta_;
  std::optional<Resolution> res_;
  double sigma_ = 1.0;
  std::function<cplx(double)> kernel_;
  double support_radius_ = 0.0;
  std::string literal_;
};

// kappa~(lambda, shift) = integral dnu kappa(lambda,gamma) kappa(lambda+shift,gamma)^*
// with shift = t Delta(f,g). For ideal measurements this is the indicator of
// R_{-shift} (the module applies the sign flip internally).
cplx kappa_tilde(const KrausFamily& fam, double lambda, double shift);

struct CausalityWitness {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double shift = 0.0;
  double gap = 0.0;  // |kappa~(lambda1) - kappa~(lambda2)|
};

struct CausalityVerdict {
  bool causal = true;
  std::optional<CausalityWitness> witness;
  double tolerance = 0.0;
};

struct ProbeSpec {
  Interval window{-8.0, 8.0};
  int samples = 4096;
  double tolerance = 1e-9;
};

// Decides whether kappa~(., shift) is constant on the probe window: analytic
// fast paths where the variant admits one, dense sampling otherwise.
CausalityVerdict causality_verdict(const KrausFamily& fam, double shift,
                                   const ProbeSpec& probe = {});

// Bob's expectation value under Alice's kick of strength s:
//   chi(s) = e^{-t^2 W(g,g)/2} W{kappa~(a ., t d_fg)}((s d_fh + i t W(f,g))/a),
// a = sqrt(W(f,f)/2).
cplx chi(const KrausFamily& fam, const PairingContext& ctx, double s, double t);

}  // namespace sorkinlab
