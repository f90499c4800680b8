#include "sorkinlab/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sorkinlab {

long chebyshev_n(double sigma_sq, double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(delta > 0.0)) throw std::invalid_argument("chebyshev_n needs eps, delta > 0");
  if (sigma_sq < 0.0) throw std::invalid_argument("chebyshev_n needs sigma^2 >= 0");
  const double n = std::ceil(sigma_sq / (epsilon * epsilon * delta));
  return std::max(1L, static_cast<long>(n));
}

double EstimatorPlan::variance() const {
  // |eta(gamma)| = exp(sigma^2 t^2 / 2) for every outcome, so
  // E|eta|^2 = exp(sigma^2 t^2) and |mu|^2 = exp(-t^2 w_gg).
  const double e_eta_sq = std::exp(kernel_sigma * kernel_sigma * t * t);
  const double mu_sq = std::exp(-t * t * w_gg);
  return e_eta_sq - mu_sq;
}

std::vector<double> sample_outcomes(const EstimatorPlan& plan) {
  if (plan.w_gg < 0.0) throw std::invalid_argument("sample_outcomes needs W(g,g) >= 0");
  if (!(plan.kernel_sigma >= 0.0)) throw std::invalid_argument("sample_outcomes needs sigma >= 0");
  const long n = plan.n_samples > 0
                     ? plan.n_samples
                     : chebyshev_n(plan.variance(), plan.epsilon, plan.delta);
  std::mt19937_64 rng(plan.seed);
  std::normal_distribution<double> field(0.0, std::sqrt(plan.w_gg));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (plan.kernel_sigma > 0.0) {
    std::normal_distribution<double> pointer(0.0, plan.kernel_sigma);
    for (long i = 0; i < n; ++i) out.push_back(field(rng) + pointer(rng));
  } else {
    // degenerate k~: a point mass, outcomes follow the field marginal alone
    for (long i = 0; i < n; ++i) out.push_back(field(rng));
  }
  return out;
}

EstimateResult estimate(const std::vector<double>& outcomes, const EstimatorPlan& plan) {
  // sqrt(2 pi) F{k~}(-t) = exp(-sigma^2 t^2 / 2) for the Gaussian kernel
  const double ft = std::exp(-0.5 * plan.kernel_sigma * plan.kernel_sigma * plan.t * plan.t);
  if (ft == 0.0) throw std::runtime_error("estimate: vanishing Fourier factor, estimator ill-conditioned");
  cplx acc{0.0, 0.0};
  for (double g : outcomes) acc += std::exp(cplx(0.0, plan.t * g));
  EstimateResult r;
  r.mean = acc / (static_cast<double>(outcomes.size()) * ft);
  r.target = std::exp(-0.5 * plan.t * plan.t * plan.w_gg);
  r.error = std::abs(r.mean - r.target);
  r.pass = r.error <= plan.epsilon;
  return r;
}

}  // namespace sorkinlab
