#include "sorkinlab/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sorkinlab {

namespace {

// single-mode annihilation matrix at cutoff n_max
Eigen::MatrixXcd mode_annihilator(int n_max) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

FockSpace fock_build(const ModeBasis& modes, int n_max) {
  const int n_modes = static_cast<int>(modes.eigenvalues.size());
  if (n_modes < 1) throw std::invalid_argument("fock_build needs at least one mode");
  if (n_modes > 3 || n_max > 60) {
    std::ostringstream oss;
    oss << "fock_build size guard: n_modes=" << n_modes << " (max 3), n_max=" << n_max
        << " (max 60)";
    throw std::invalid_argument(oss.str());
  }
  double dim_check = 1.0;
  for (int k = 0; k < n_modes; ++k) dim_check *= n_max + 1;
  if (dim_check > 20000.0) {
    std::ostringstream oss;
    oss << "fock_build size guard: dimension " << dim_check << " exceeds the dense limit";
    throw std::invalid_argument(oss.str());
  }

  FockSpace out;
  out.n_modes = n_modes;
  out.n_max = n_max;
  out.dim = static_cast<Eigen::Index>(dim_check);
  out.w_target = modes.w_matrix;

  // per-mode ladder operators embedded in the tensor product
  const Eigen::MatrixXcd a1 = mode_annihilator(n_max);
  const Eigen::MatrixXcd id1 = Eigen::MatrixXcd::Identity(n_max + 1, n_max + 1);
  std::vector<Eigen::MatrixXcd> ladders;
  for (int k = 0; k < n_modes; ++k) {
    Eigen::MatrixXcd op = (k == 0) ? a1 : id1;
    for (int m = 1; m < n_modes; ++m) op = kron(op, (m == k) ? a1 : id1);
    ladders.push_back(std::move(op));
  }

  const Eigen::Index n_points = modes.eigenvectors.rows();
  out.field_ops.reserve(n_points);
  for (Eigen::Index x = 0; x < n_points; ++x) {
    Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(out.dim, out.dim);
    for (int k = 0; k < n_modes; ++k) {
      const cplx amp = std::sqrt(modes.eigenvalues[k]) * modes.eigenvectors(x, k);
      phi += amp * ladders[k] + std::conj(amp) * ladders[k].adjoint();
    }
    out.field_ops.push_back(std::move(phi));
  }

  out.vacuum = Eigen::VectorXcd::Zero(out.dim);
  out.vacuum(0) = 1.0;
  return out;
}

Eigen::MatrixXcd smeared_field(const FockSpace& f, const Eigen::VectorXd& coeffs) {
  if (coeffs.size() != static_cast<Eigen::Index>(f.field_ops.size())) {
    throw std::invalid_argument("smeared_field: coefficient count != point count");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(f.dim, f.dim);
  for (Eigen::Index x = 0; x < coeffs.size(); ++x) {
    if (coeffs(x) != 0.0) out += coeffs(x) * f.field_ops[x];
  }
  return out;
}

Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd& h,
                                    const std::function<cplx(double)>& zeta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_function: eigensolve failed");
  Eigen::VectorXcd d(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = zeta(es.eigenvalues()(i));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd spectral_projector(const FockSpace& f, const Eigen::VectorXd& coeffs,
                                    const IntervalSet& bins) {
  const Eigen::MatrixXcd h = smeared_field(f, coeffs);
  return hermitian_function(h, [&bins](double l) { return cplx(bins.contains(l) ? 1.0 : 0.0, 0.0); });
}

double pvm_unitary_covariance_check(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& u,
                                    const IntervalSet& bins) {
  auto indicator = [&bins](double l) { return cplx(bins.contains(l) ? 1.0 : 0.0, 0.0); };
  const Eigen::MatrixXcd lhs = u.adjoint() * hermitian_function(x, indicator) * u;
  const Eigen::MatrixXcd rhs = hermitian_function(u.adjoint() * x * u, indicator);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

ChiOracleSession::Basis ChiOracleSession::diagonalise(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("chi_oracle: eigensolve failed");
  return Basis{es.eigenvectors(), es.eigenvalues()};
}

ChiOracleSession::ChiOracleSession(const FockSpace& fk, const Eigen::VectorXd& f,
                                   const Eigen::VectorXd& h, const Eigen::VectorXd& g)
    : dim_(fk.dim),
      f_(diagonalise(smeared_field(fk, f))),
      h_(diagonalise(smeared_field(fk, h))),
      g_(diagonalise(smeared_field(fk, g))) {
  vac_h_ = h_.v.adjoint() * fk.vacuum;
  h_to_f_ = f_.v.adjoint() * h_.v;
  // Delta(f,g) = -i f^T (W - W^T) g, from the mode data the space was built on
  const Eigen::MatrixXcd comm = fk.w_target - fk.w_target.transpose();
  const cplx dfg = (f.cast<cplx>().transpose() * comm * g.cast<cplx>())(0, 0) * cplx(0.0, -1.0);
  delta_fg_ = dfg.real();
}

cplx ChiOracleSession::evaluate(const KrausFamily& fam, double s, double t) const {
  return evaluate_impl(fam, s, t, false);
}

cplx ChiOracleSession::evaluate_projector_sum(const KrausFamily& fam, double s, double t) const {
  if (fam.variant() != KrausFamily::Variant::ideal) {
    throw std::invalid_argument("evaluate_projector_sum applies to ideal families only");
  }
  return evaluate_impl(fam, s, t, true);
}

cplx ChiOracleSession::evaluate_impl(const KrausFamily& fam, double s, double t,
                                     bool projector_sum) const {
  const std::string key =
      fam.literal() + "|" + std::to_string(t) + (projector_sum ? "|sum" : "");
  if (cached_key_ != key) {
    Eigen::VectorXcd bob_phase(g_.d.size());
    for (Eigen::Index i = 0; i < g_.d.size(); ++i) bob_phase(i) = std::exp(cplx(0.0, t * g_.d(i)));
    const Eigen::MatrixXcd g_to_f = f_.v.adjoint() * g_.v;
    Eigen::MatrixXcd xt = g_to_f * bob_phase.asDiagonal() * g_to_f.adjoint();

    const Eigen::VectorXd& d = f_.d;
    if (fam.variant() == KrausFamily::Variant::ideal && !projector_sum) {
      // collapsed form kappa~(phi(f), t Delta(f,g)) e^{it phi(g)}: the
      // R_{-shift} indicator is diagonal in this basis and sits between
      // smooth states, so truncation noise stays small. Spectrum atoms that
      // land exactly on a bin edge get half weight (the edge carries zero
      // measure in the continuum).
      const double shift = t * delta_fg_;
      const double eps = 1e-9 * std::max(1.0, d.cwiseAbs().maxCoeff());
      for (Eigen::Index i = 0; i < dim_; ++i) {
        xt.row(i) *=
            0.5 * (kappa_tilde(fam, d(i) - eps, shift) + kappa_tilde(fam, d(i) + eps, shift));
      }
    } else if (fam.variant() == KrausFamily::Variant::l2_kernel) {
      // kappa~ is an autocorrelation in the eigenvalue difference; tabulate
      // once on a fine grid and interpolate linearly
      const double span = std::max(1e-12, d.maxCoeff() - d.minCoeff());
      const int n_tab = 4096;
      std::vector<cplx> table(static_cast<std::size_t>(n_tab) + 1);
      for (int i = 0; i <= n_tab; ++i) {
        table[static_cast<std::size_t>(i)] = kappa_tilde(fam, 0.0, -span + 2.0 * span * i / n_tab);
      }
      for (Eigen::Index i = 0; i < dim_; ++i) {
        for (Eigen::Index j = 0; j < dim_; ++j) {
          const double pos = (d(j) - d(i) + span) / (2.0 * span) * n_tab;
          const int i0 = std::min(n_tab - 1, std::max(0, static_cast<int>(pos)));
          const double w = pos - i0;
          xt(i, j) *= (1.0 - w) * table[static_cast<std::size_t>(i0)] +
                      w * table[static_cast<std::size_t>(i0) + 1];
        }
      }
    } else {
      for (Eigen::Index i = 0; i < dim_; ++i) {
        for (Eigen::Index j = 0; j < dim_; ++j) {
          xt(i, j) *= kappa_tilde(fam, d(i), d(j) - d(i));
        }
      }
    }
    kernel_bob_ = std::move(xt);
    cached_key_ = key;
  }
  // |psi_s> = e^{-is phi(h)} |vac> expressed in the phi(f) eigenbasis
  Eigen::VectorXcd alice = vac_h_;
  for (Eigen::Index i = 0; i < alice.size(); ++i) alice(i) *= std::exp(cplx(0.0, -s * h_.d(i)));
  const Eigen::VectorXcd u = h_to_f_ * alice;
  return (u.adjoint() * kernel_bob_ * u)(0, 0);
}

cplx chi_oracle(const FockSpace& fk, const Eigen::VectorXd& f, const Eigen::VectorXd& h,
                const Eigen::VectorXd& g, const KrausFamily& fam, double s, double t) {
  return ChiOracleSession(fk, f, h, g).evaluate(fam, s, t);
}

}  // namespace sorkinlab
