#include "sorkinlab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sorkinlab {

namespace {

PairingContext context_from_vectors(const PropagatorSet& props, const ModeBasis& modes,
                                    const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                                    const Eigen::VectorXd& h) {
  PairingContext ctx;
  ctx.d_fg = pair_delta(props, f, g);
  ctx.d_fh = pair_delta(props, f, h);
  ctx.d_gh = pair_delta(props, g, h);
  ctx.w_ff = pair_w(modes, f, f).real();
  ctx.w_gg = pair_w(modes, g, g).real();
  ctx.w_fg = pair_w(modes, f, g);
  ctx.w_gf = pair_w(modes, g, f);
  ctx.validate();
  return ctx;
}

}  // namespace

BuildResult build_scenario(const CausalSet& cs, const PropagatorSet& props,
                           const ModeBasis& modes, const Eigen::VectorXd& f, const PointSet& k) {
  BuildResult out;
  if (f.size() != cs.size()) throw std::invalid_argument("build_scenario: f has wrong length");

  const TransitivityResult tr = is_transitive(cs, k);
  if (tr.transitive) {
    out.reason = "no Sorkin scenario: K is transitive";
    return out;
  }

  const Eigen::VectorXd delta_f = props.delta * f;
  const PointSet k_plus = in_out_region(cs, k, RegionSide::out);
  const PointSet k_minus = in_out_region(cs, k, RegionSide::in);
  const double tol = 1e-12 * std::max(1.0, delta_f.cwiseAbs().maxCoeff());

  for (int xp : k_plus) {
    if (std::abs(delta_f(xp)) <= tol) continue;
    for (int xm : k_minus) {
      if (std::abs(delta_f(xm)) <= tol) continue;
      if (cs.precedes(xp, xm) || cs.precedes(xm, xp)) continue;
      SorkinScenario sc;
      sc.f = f;
      sc.k = k;
      sc.x_plus = xp;
      sc.x_minus = xm;
      sc.g = Eigen::VectorXd::Zero(cs.size());
      sc.g(xp) = 1.0;
      sc.h = Eigen::VectorXd::Zero(cs.size());
      sc.h(xm) = 1.0;
      sc.ctx = context_from_vectors(props, modes, f, sc.g, sc.h);
      if (sc.ctx.d_gh != 0.0) throw std::logic_error("spacelike pair with Delta(g,h) != 0");
      if (sc.ctx.d_fg == 0.0 || sc.ctx.d_fh == 0.0) continue;
      out.scenario = std::move(sc);
      return out;
    }
  }
  out.reason = "no Sorkin scenario: no spacelike pair in K+- meets supp(Delta f)";
  return out;
}

CausalSet fig7_causet() {
  return CausalSet::from_relations(4, {{0, 1}, {2, 3}},
                                   std::vector<Event2D>{Event2D{0.0, -1.0}, Event2D{1.0, -1.0},
                                                        Event2D{0.0, 1.0}, Event2D{1.0, 1.0}});
}

SignalScan signal_scan(const SorkinScenario& sc, const KrausFamily& fam, double t,
                       const std::vector<double>& s_grid) {
  SignalScan out;
  out.chi_values.reserve(s_grid.size());
  for (double s : s_grid) out.chi_values.push_back(chi(fam, sc.ctx, s, t));
  const cplx base = chi(fam, sc.ctx, 0.0, t);
  for (const cplx& c : out.chi_values) out.max_gap = std::max(out.max_gap, std::abs(c - base));
  return out;
}

Phi2ClosedForm closed_form_phi2(const PairingContext& ctx, double s, double t) {
  // W(g~,g~) with g~ = g - 2 Delta(f,g) f, by bilinearity of W
  const cplx w_gt = ctx.w_gg - 2.0 * ctx.d_fg * (ctx.w_fg + ctx.w_gf) +
                    4.0 * ctx.d_fg * ctx.d_fg * ctx.w_ff;
  if (std::abs(w_gt.imag()) > 1e-9 * std::max(1.0, std::abs(w_gt))) {
    throw std::logic_error("closed_form_phi2: W(g~,g~) came out non-real");
  }
  Phi2ClosedForm out;
  out.rhs = std::exp(-0.5 * t * t * w_gt.real());
  out.lhs = std::exp(cplx(0.0, -2.0 * s * t * ctx.d_fg * ctx.d_fh)) * out.rhs;
  return out;
}

Phi2ClosedForm closed_form_phi2(const PropagatorSet& props, const ModeBasis& modes,
                                const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                                const Eigen::VectorXd& h, double s, double t) {
  const double d_fg = pair_delta(props, f, g);
  const double d_fh = pair_delta(props, f, h);
  const Eigen::VectorXd g_tilde = g - 2.0 * d_fg * f;
  Phi2ClosedForm out;
  out.rhs = std::exp(-0.5 * t * t * pair_w(modes, g_tilde, g_tilde).real());
  out.lhs = std::exp(cplx(0.0, -2.0 * s * t * d_fg * d_fh)) * out.rhs;
  return out;
}

bool in_past_cone_of(const Event2D& p, const Rect& k) {
  if (p.t > k.t_range.hi) return false;
  const double gap = std::max({0.0, k.x_range.lo - p.x, p.x - k.x_range.hi});
  return gap <= k.t_range.hi - p.t;
}

bool in_future_cone_of(const Event2D& p, const Rect& k) {
  if (p.t < k.t_range.lo) return false;
  const double gap = std::max({0.0, k.x_range.lo - p.x, p.x - k.x_range.hi});
  return gap <= p.t - k.t_range.lo;
}

ContinuumBuildResult build_scenario_continuum(const Grid2D& domain, const GridField& f,
                                              double mass, const Rect& k, double bump_radius) {
  ContinuumBuildResult out;
  const GridField delta_f = apply_pauli_jordan(domain, f, mass);
  const double scale = *std::max_element(delta_f.values.begin(), delta_f.values.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
  const double tol = 1e-6 * std::max(1.0, std::abs(scale));

  // candidate points of K+ / K- inside supp(Delta f); K+ = complement of J^-(K)
  std::vector<Event2D> plus, minus;
  for (int i = 0; i < domain.nt; ++i) {
    for (int j = 0; j < domain.nx; ++j) {
      if (std::abs(delta_f.at(i, j)) <= tol) continue;
      const Event2D p = domain.point(i, j);
      if (!in_past_cone_of(p, k)) plus.push_back(p);
      if (!in_future_cone_of(p, k)) minus.push_back(p);
    }
  }
  for (const Event2D& xp : plus) {
    for (const Event2D& xm : minus) {
      if (!spacelike(xp, xm)) continue;
      ContinuumScenario sc;
      sc.x_plus = xp;
      sc.x_minus = xm;
      if (mass > 0.0) {
        sc.g = bump(domain, xp, bump_radius);
        sc.h = bump(domain, xm, bump_radius);
        PairingContext ctx;
        ctx.d_fg = continuum_delta_pairing(f, sc.g, mass).value;
        ctx.d_fh = continuum_delta_pairing(f, sc.h, mass).value;
        ctx.d_gh = continuum_delta_pairing(sc.g, sc.h, mass).value;
        ctx.w_ff = continuum_w_pairing(f, f, mass).real();
        ctx.w_gg = continuum_w_pairing(sc.g, sc.g, mass).real();
        ctx.w_fg = continuum_w_pairing(f, sc.g, mass);
        ctx.w_gf = continuum_w_pairing(sc.g, f, mass);
        ctx.validate(1e-5);
        if (ctx.d_fg == 0.0 || ctx.d_fh == 0.0) continue;
        sc.ctx = ctx;
      }
      out.scenario = std::move(sc);
      return out;
    }
  }
  out.reason = "no Sorkin scenario: no spacelike pair in K+- meets supp(Delta f)";
  return out;
}

MasslessDecomposition massless_decompose(const GridField& phi, double tolerance) {
  const Grid2D& g = phi.grid;
  if (std::abs(g.dt() - g.dx()) > 1e-12 * g.dt()) {
    throw std::invalid_argument("massless_decompose needs a square lattice (dt = dx)");
  }
  const int i0 = g.nt / 2;
  const int j0 = g.nx / 2;
  // diagonal index ranges: d = i - j in [-(nx-1), nt-1], e = i + j in [0, nt+nx-2]
  const int d_lo = -(g.nx - 1), d_hi = g.nt - 1;
  const int e_hi = g.nt + g.nx - 2;
  const double base = phi.at(i0, j0);

  MasslessDecomposition out;
  // U along v = v0 (i + j = i0 + j0), V along u = u0 (i - j = i0 - j0). These
  // diagonals only carry lattice points where parities match; the residual is
  // checked on the sublattice where both lookups are on-lattice.
  const int e0 = i0 + j0;
  const int d0 = i0 - j0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> u_by_d(static_cast<std::size_t>(d_hi - d_lo + 1), nan);
  std::vector<double> v_by_e(static_cast<std::size_t>(e_hi + 1), nan);
  for (int d = d_lo; d <= d_hi; ++d) {
    if (((d + e0) % 2 + 2) % 2 != 0) continue;
    const int i = (d + e0) / 2;
    const int j = e0 - i;
    if (i < 0 || i >= g.nt || j < 0 || j >= g.nx) continue;
    u_by_d[static_cast<std::size_t>(d - d_lo)] = phi.at(i, j) - base;
    out.u_coords.push_back(g.t(i) - g.x(j));
    out.u_values.push_back(phi.at(i, j) - base);
  }
  for (int e = 0; e <= e_hi; ++e) {
    if (((d0 + e) % 2 + 2) % 2 != 0) continue;
    const int i = (d0 + e) / 2;
    const int j = e - i;
    if (i < 0 || i >= g.nt || j < 0 || j >= g.nx) continue;
    v_by_e[static_cast<std::size_t>(e)] = phi.at(i, j);
    out.v_coords.push_back(g.t(i) + g.x(j));
    out.v_values.push_back(phi.at(i, j));
  }

  double residual = 0.0;
  for (int i = 0; i < g.nt; ++i) {
    for (int j = 0; j < g.nx; ++j) {
      if ((i + j) % 2 != (((e0 % 2) + 2) % 2)) continue;
      const double uu = u_by_d[static_cast<std::size_t>(i - j - d_lo)];
      const double vv = v_by_e[static_cast<std::size_t>(i + j)];
      if (std::isnan(uu) || std::isnan(vv)) continue;
      residual = std::max(residual, std::abs(phi.at(i, j) - uu - vv));
    }
  }
  out.residual = residual;
  if (residual > tolerance) {
    std::ostringstream oss;
    oss << "massless_decompose: residual " << residual << " exceeds tolerance " << tolerance
        << " (field is not a wave solution at this resolution)";
    throw std::runtime_error(oss.str());
  }
  return out;
}

}  // namespace sorkinlab
