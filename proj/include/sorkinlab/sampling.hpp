#pragma once

#include <cstdint>
#include <vector>

#include "sorkinlab/kraus.hpp"

namespace sorkinlab {

// Plan for recovering tr(rho e^{it phi(g)}) from simulated L2-Kraus
// measurement outcomes: outcome density is the convolution of the vacuum
// Gaussian (variance W(g,g)) with k~ = |k|^2.
struct EstimatorPlan {
  double t = 1.0;
  double kernel_sigma = 0.5;  // Gaussian k of this width
  double w_gg = 1.0;
  double epsilon = 0.05;
  double delta = 0.1;
  long n_samples = 0;  // 0: use chebyshev_n of the plan variance
  std::uint64_t seed = 0;

  // E|eta|^2 - |target|^2 for the Gaussian kernel (|eta| is constant).
  double variance() const;
};

// Chebyshev sample bound ceil(sigma^2 / (eps^2 delta)), at least 1.
long chebyshev_n(double sigma_sq, double epsilon, double delta);

// gamma_i = lambda_i + x_i with lambda ~ N(0, W(g,g)) and x ~ k~.
std::vector<double> sample_outcomes(const EstimatorPlan& plan);

struct EstimateResult {
  cplx mean{0.0, 0.0};
  cplx target{0.0, 0.0};  // e^{-t^2 W(g,g)/2}
  double error = 0.0;     // |mean - target|
  bool pass = false;      // error <= epsilon
};

// mean of eta(gamma) = e^{it gamma} / (sqrt(2 pi) F{k~}(-t)) over the outcomes.
EstimateResult estimate(const std::vector<double>& outcomes, const EstimatorPlan& plan);

}  // namespace sorkinlab
