#pragma once

#include <Eigen/Dense>
#include <complex>

#include "sorkinlab/spacetime.hpp"

namespace sorkinlab {

// Retarded/advanced Green data and the Pauli-Jordan matrix on a causal set.
// G+ is supported on the causal past: g_ret(x,y) != 0 implies y <= x.
struct PropagatorSet {
  Eigen::MatrixXd g_ret;
  Eigen::MatrixXd g_adv;   // transpose of g_ret
  Eigen::MatrixXd delta;   // g_adv - g_ret, antisymmetric by construction
  double mass = 0.0;
  double density = 1.0;
  // chain-sum coefficients, kept in the output so alternates can be swapped
  double coeff_a = 0.5;
  double coeff_b = 0.0;
};

// Massive causet retarded Green function as the resummed weighted sum over
// chains, G+ = a C (I - a b C)^{-1} with a = 1/2, b = -mass^2/density and C the
// strict past causal matrix. Massless case reduces to G+ = C/2.
PropagatorSet causet_retarded_green(const CausalSet& cs, double mass, double density);

// Positive spectral half of i*Delta: the Sorkin-Johnston mode data.
struct ModeBasis {
  std::vector<double> eigenvalues;  // strictly positive, descending
  Eigen::MatrixXcd eigenvectors;    // orthonormal columns, one per eigenvalue
  Eigen::MatrixXcd w_matrix;        // W = sum_k lambda_k v_k v_k^dagger
};

ModeBasis sj_modes(const PropagatorSet& p);

enum class PairingKind { delta, w };

// Smeared pairing f^T M g with M = Delta or W (left argument conjugated for
// complex test vectors).
std::complex<double> pair(const PropagatorSet& p, const ModeBasis& modes,
                          const Eigen::VectorXcd& f, const Eigen::VectorXcd& g,
                          PairingKind kind);
double pair_delta(const PropagatorSet& p, const Eigen::VectorXd& f, const Eigen::VectorXd& g);
std::complex<double> pair_w(const ModeBasis& modes, const Eigen::VectorXd& f,
                            const Eigen::VectorXd& g);

}  // namespace sorkinlab
