#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sorkinlab/kraus.hpp"
#include "sorkinlab/propagators.hpp"

namespace sorkinlab {

// Truncated multi-mode bosonic matrix model built from the SJ mode data:
// phi_x = sum_k sqrt(lambda_k) (v_k(x) a_k + v_k(x)^* a_k^+), cut at n_max
// excitations per mode. Everything downstream is dense linear algebra.
struct FockSpace {
  int n_modes = 0;
  int n_max = 0;
  Eigen::Index dim = 0;
  std::vector<Eigen::MatrixXcd> field_ops;  // one Hermitian matrix per causet point
  Eigen::VectorXcd vacuum;                  // all-zeros occupation
  Eigen::MatrixXcd w_target;                // the exact W matrix, for checks
};

// Guards: n_modes <= 3, n_max <= 60, and the resulting dimension must stay
// dense-friendly.
FockSpace fock_build(const ModeBasis& modes, int n_max);

// phi(f) = sum_x f(x) phi_x
Eigen::MatrixXcd smeared_field(const FockSpace& f, const Eigen::VectorXd& coeffs);

// zeta(H) for Hermitian H through its eigendecomposition.
Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd& h,
                                    const std::function<cplx(double)>& zeta);

// 1_B(phi(f)): sum of eigenprojectors with eigenvalue inside the bins.
Eigen::MatrixXcd spectral_projector(const FockSpace& f, const Eigen::VectorXd& coeffs,
                                    const IntervalSet& bins);

// ||U^-1 1_B(X) U - 1_B(U^-1 X U)||_max for self-adjoint X and unitary U.
double pvm_unitary_covariance_check(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& u,
                                    const IntervalSet& bins);

// Direct matrix evaluation of
//   chi(s) = <vac| e^{is phi(h)} E(e^{it phi(g)}) e^{-is phi(h)} |vac>
// for the given Kraus family acting through phi(f). Everything happens in the
// phi(f) eigenbasis, where Kraus factors are diagonal.
//
// For smooth families the update map is the Hadamard product with
// K_ij = kappa~(d_i, d_j - d_i). For ideal measurements the default path uses
// the collapsed operator form 1_{R_{-t Delta(f,g)}}(phi(f)) e^{it phi(g)}:
// the indicator then sits between smooth states and truncation noise stays at
// the 1e-5 level by n_max = 40. The literal projector sum
// sum_n E_n X E_n is kept as a separate entry point; its gap to the collapsed
// form is pure truncation error of the collapse identity and shrinks with
// n_max (slowly - the bin-diagonal jump is sampled by the discrete spectrum).
//
// The session form eigensolves phi(f), phi(h), phi(g) once and caches the
// transformed Bob operator per (family, t); each chi(s) evaluation is then a
// quadratic form.
class ChiOracleSession {
 public:
  ChiOracleSession(const FockSpace& fk, const Eigen::VectorXd& f, const Eigen::VectorXd& h,
                   const Eigen::VectorXd& g);
  cplx evaluate(const KrausFamily& fam, double s, double t) const;
  // ideal families only: the literal sum over bin projectors
  cplx evaluate_projector_sum(const KrausFamily& fam, double s, double t) const;

 private:
  struct Basis {
    Eigen::MatrixXcd v;
    Eigen::VectorXd d;
  };
  static Basis diagonalise(const Eigen::MatrixXcd& h);
  cplx evaluate_impl(const KrausFamily& fam, double s, double t, bool projector_sum) const;

  Eigen::Index dim_;
  Basis f_, h_, g_;
  Eigen::VectorXcd vac_h_;                 // vacuum in the phi(h) eigenbasis
  Eigen::MatrixXcd h_to_f_;                // V_f^+ V_h
  double delta_fg_ = 0.0;                  // Delta(f,g) from the mode data
  mutable std::string cached_key_;
  mutable Eigen::MatrixXcd kernel_bob_;    // K o (V_f^+ e^{it phi(g)} V_f)
};

cplx chi_oracle(const FockSpace& fk, const Eigen::VectorXd& f, const Eigen::VectorXd& h,
                const Eigen::VectorXd& g, const KrausFamily& fam, double s, double t);

}  // namespace sorkinlab
