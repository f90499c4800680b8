#include "sorkinlab/propagators.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sorkinlab {

PropagatorSet causet_retarded_green(const CausalSet& cs, double mass, double density) {
  if (!(density > 0.0)) throw std::invalid_argument("causet_retarded_green needs density > 0");
  if (mass < 0.0) throw std::invalid_argument("causet_retarded_green needs mass >= 0");
  const int n = cs.size();
  const std::vector<double> c_flat = cs.strict_causal_matrix_past();
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) c(i, j) = c_flat[static_cast<std::size_t>(i) * n + j];
  }

  PropagatorSet out;
  out.mass = mass;
  out.density = density;
  out.coeff_a = 0.5;
  out.coeff_b = -mass * mass / density;

  if (mass == 0.0) {
    out.g_ret = out.coeff_a * c;
  } else {
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - out.coeff_a * out.coeff_b * c;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) {
      const double radius = (out.coeff_a * out.coeff_b * c).eigenvalues().cwiseAbs().maxCoeff();
      std::ostringstream oss;
      oss << "resummation diverges: I - b a C is singular (spectral radius of baC = " << radius
          << ")";
      throw std::runtime_error(oss.str());
    }
    out.g_ret = out.coeff_a * c * lu.inverse();
  }
  out.g_adv = out.g_ret.transpose();
  out.delta = out.g_adv - out.g_ret;
  return out;
}

ModeBasis sj_modes(const PropagatorSet& p) {
  const Eigen::Index n = p.delta.rows();
  const Eigen::MatrixXcd i_delta = std::complex<double>(0.0, 1.0) * p.delta.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(i_delta);
  if (es.info() != Eigen::Success) throw std::runtime_error("sj_modes: eigendecomposition failed");

  const Eigen::VectorXd evals = es.eigenvalues();  // ascending
  const double scale = evals.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * scale;

  ModeBasis out;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (evals(k) > tol) keep.push_back(k);  // descending positives
  }
  out.eigenvalues.reserve(keep.size());
  out.eigenvectors.resize(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    out.eigenvalues.push_back(evals(keep[j]));
    out.eigenvectors.col(static_cast<Eigen::Index>(j)) = es.eigenvectors().col(keep[j]);
  }
  out.w_matrix = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t j = 0; j < keep.size(); ++j) {
    const auto v = out.eigenvectors.col(static_cast<Eigen::Index>(j));
    out.w_matrix += out.eigenvalues[j] * v * v.adjoint();
  }
  return out;
}

std::complex<double> pair(const PropagatorSet& p, const ModeBasis& modes,
                          const Eigen::VectorXcd& f, const Eigen::VectorXcd& g,
                          PairingKind kind) {
  if (kind == PairingKind::delta) {
    return (f.adjoint() * p.delta.cast<std::complex<double>>() * g)(0, 0);
  }
  return (f.adjoint() * modes.w_matrix * g)(0, 0);
}

double pair_delta(const PropagatorSet& p, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  return f.transpose() * p.delta * g;
}

std::complex<double> pair_w(const ModeBasis& modes, const Eigen::VectorXd& f,
                            const Eigen::VectorXd& g) {
  const Eigen::VectorXcd fc = f.cast<std::complex<double>>();
  const Eigen::VectorXcd gc = g.cast<std::complex<double>>();
  return (fc.transpose() * modes.w_matrix * gc)(0, 0);
}

}  // namespace sorkinlab
