#include <doctest.h>

#include <cmath>

#include "sorkinlab/deco.hpp"
#include "sorkinlab/scenario.hpp"

using namespace sorkinlab;

namespace {

struct DecoRig {
  CausalSet cs = fig7_causet();
  PropagatorSet props = causet_retarded_green(cs, 0.0, 1.0);
  ModeBasis modes = sj_modes(props);
  FockSpace fk;
  std::array<int, 4> points{0, 1, 2, 3};
  DecoRig(int n_max = 12) : fk(fock_build(modes, n_max)) {}
};

std::array<CellGrid, 4> same_axes(const CellGrid& g) { return {g, g, g, g}; }

}  // namespace

TEST_SUITE_BEGIN("deco");

TEST_CASE("a single all-covering cell per axis gives D = 1") {
  DecoRig rig(8);
  const BinnedDecoherence d =
      binned_decoherence(rig.fk, same_axes(CellGrid::single_cell()), rig.points);
  REQUIRE(d.values.size() == 1);
  CHECK(std::abs(d.values[0] - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("decoherence functional invariants on a coarse grid") {
  DecoRig rig(12);
  const CellGrid axis = CellGrid::uniform_with_tails(-1.0, 1.0, 0.5);
  const BinnedDecoherence d = binned_decoherence(rig.fk, same_axes(axis), rig.points);
  const int n = axis.cells();

  SUBCASE("Hermiticity D(c, cbar) = conj(D(cbar, c)) holds exactly") {
    for (int ca = 0; ca < n; ca += 2) {
      for (int c1 = 0; c1 < n; c1 += 2) {
        for (int c2 = 0; c2 < n; c2 += 3) {
          for (int cb = 0; cb < n; cb += 2) {
            for (int ba = 0; ba < n; ba += 3) {
              const std::array<int, 4> c{ca, c1, c2, cb};
              const std::array<int, 4> cbar{ba, (c1 + 1) % n, c2, cb};
              CHECK(std::abs(d.at(c, cbar) - std::conj(d.at(cbar, c))) < 1e-13);
            }
          }
        }
      }
    }
  }
  SUBCASE("mismatched Bob cells vanish by projector orthogonality") {
    CHECK(d.at({0, 0, 0, 1}, {0, 0, 0, 2}) == cplx(0.0, 0.0));
  }
  SUBCASE("the trace normalisation sums to 1") {
    cplx total{0.0, 0.0};
    for (const cplx& v : d.values) total += v;
    CHECK(std::abs(total - cplx(1.0, 0.0)) < 1e-10);
  }
  SUBCASE("diagonal marginal is real and nonnegative") {
    for (int ca = 0; ca < n; ++ca) {
      for (int c1 = 0; c1 < n; ++c1) {
        for (int c2 = 0; c2 < n; ++c2) {
          for (int cb = 0; cb < n; ++cb) {
            const cplx v = d.slot(ca, c1, c2, cb, ca, c1, c2);
            CHECK(v.real() >= -1e-12);
            CHECK(std::abs(v.imag()) < 1e-12);
          }
        }
      }
    }
  }
  SUBCASE("summing over one path reduces to the single-path chain amplitude") {
    const std::vector<cplx> reduced = sum_over_bar_paths(d);
    // independently recompute <vac| P_B P_2 P_1 P_A |vac> per path
    std::size_t idx = 0;
    Eigen::VectorXd ea(4), e1(4), e2(4), eb(4);
    ea << 1, 0, 0, 0;
    e1 << 0, 1, 0, 0;
    e2 << 0, 0, 1, 0;
    eb << 0, 0, 0, 1;
    auto cell_set = [&](int c) {
      return IntervalSet{Interval{d.axes[0].edges[static_cast<std::size_t>(c)],
                                  d.axes[0].edges[static_cast<std::size_t>(c) + 1]}};
    };
    for (int ca = 0; ca < n; ++ca) {
      const Eigen::MatrixXcd pa = spectral_projector(rig.fk, ea, cell_set(ca));
      for (int c1 = 0; c1 < n; ++c1) {
        const Eigen::MatrixXcd p1 = spectral_projector(rig.fk, e1, cell_set(c1));
        for (int c2 = 0; c2 < n; ++c2) {
          const Eigen::MatrixXcd p2 = spectral_projector(rig.fk, e2, cell_set(c2));
          for (int cb = 0; cb < n; ++cb, ++idx) {
            const Eigen::MatrixXcd pb = spectral_projector(rig.fk, eb, cell_set(cb));
            const cplx amp =
                (rig.fk.vacuum.adjoint() * pb * p2 * p1 * pa * rig.fk.vacuum)(0, 0);
            CHECK(std::abs(reduced[idx] - amp) < 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("no-measurement marginal does not depend on the kick") {
  DecoRig rig(12);
  const CellGrid axis = CellGrid::uniform_with_tails(-1.2, 1.2, 0.4);
  const BinnedDecoherence d = binned_decoherence(rig.fk, same_axes(axis), rig.points);
  const double t = 1.0;
  SUBCASE("dropping the indicators kills the s dependence") {
    CHECK(marginal_independence_check(d, t, {0.0, 0.5, 1.0}) < 1e-10);
  }
  SUBCASE("s = 0 no-measurement chi approaches <e^{it phi_B}> as cells shrink") {
    const double target = std::exp(-0.5 * t * t * rig.modes.w_matrix(3, 3).real());
    double prev_err = 1e9;
    for (double w : {0.8, 0.4, 0.2}) {
      const CellGrid g = CellGrid::uniform_with_tails(-1.6, 1.6, w);
      const BinnedDecoherence dd = binned_decoherence(rig.fk, same_axes(g), rig.points);
      const double err = std::abs(chi_from_deco_no_measurement(dd, 0.0, t) - cplx(target, 0.0));
      CHECK(err < 1.0 * w + 0.05);
      CHECK(err <= prev_err + 1e-12);
      prev_err = err;
    }
  }
  SUBCASE("Bob phase on the barred path coincides (projector collapse)") {
    const cplx a = chi_from_deco_no_measurement(d, 0.7, t, false);
    const cplx b = chi_from_deco_no_measurement(d, 0.7, t, true);
    CHECK(std::abs(a - b) < 1e-14);
  }
  SUBCASE("with ideal indicators the marginal does depend on s") {
    const Resolution res = Resolution::uniform(std::sqrt(0.5), 0.1);
    const cplx base = chi_from_deco(d, 0.0, 1.4, res, 1.0, 1.0);
    double dev = 0.0;
    for (double s : {0.5, 1.0}) {
      dev = std::max(dev, std::abs(chi_from_deco(d, s, 1.4, res, 1.0, 1.0) - base));
    }
    CHECK(dev > 1e-4);
  }
}

TEST_CASE("streamed evaluation reproduces the materialised sums") {
  DecoRig rig(10);
  const CellGrid axis = CellGrid::uniform_with_tails(-1.0, 1.0, 0.5);
  const BinnedDecoherence d = binned_decoherence(rig.fk, same_axes(axis), rig.points);
  const Resolution res = Resolution::uniform(0.7, 0.2);
  for (double s : {0.0, 0.8}) {
    for (double t : {0.6, 1.0}) {
      const cplx lhs = chi_from_deco(d, s, t, res, 1.0, 1.0);
      const cplx rhs = chi_deco_streamed(rig.fk, same_axes(axis), rig.points, s, t, &res, 1.0, 1.0);
      CHECK(std::abs(lhs - rhs) < 1e-11);
      const cplx lhs0 = chi_from_deco_no_measurement(d, s, t);
      const cplx rhs0 =
          chi_deco_streamed(rig.fk, same_axes(axis), rig.points, s, t, nullptr, 1.0, 1.0);
      CHECK(std::abs(lhs0 - rhs0) < 1e-11);
    }
  }
}

TEST_CASE("deco chi converges first-order toward the projector-sum oracle as cells halve") {
  DecoRig rig(14);
  Eigen::VectorXd f(4), h(4), g(4);
  f << 0, 1, 1, 0;
  h << 1, 0, 0, 0;
  g << 0, 0, 0, 1;
  const Resolution res = Resolution::uniform(std::sqrt(0.5), 0.1);
  const KrausFamily fam = KrausFamily::ideal(res);
  const ChiOracleSession sess(rig.fk, f, h, g);
  const double s = 0.6, t = 1.2;
  const cplx oracle = sess.evaluate_projector_sum(fam, s, t);
  double prev = 1e9;
  for (double w : {0.4, 0.2, 0.1}) {
    const CellGrid axis = CellGrid::uniform_with_tails(-2.0, 2.0, w);
    const cplx v = chi_deco_streamed(rig.fk, same_axes(axis), rig.points, s, t, &res, 1.0, 1.0);
    const double err = std::abs(v - oracle);
    CHECK(err < 1.2 * w);
    CHECK(err <= prev + 1e-12);
    prev = err;
  }
}

TEST_CASE("size guards") {
  DecoRig rig(6);
  CellGrid too_many;
  too_many.edges.push_back(-kInf);
  for (int i = 0; i <= 12; ++i) too_many.edges.push_back(-1.2 + 0.2 * i);
  too_many.edges.push_back(kInf);
  CHECK(too_many.cells() > 12);
  CHECK_THROWS(binned_decoherence(rig.fk, same_axes(too_many), rig.points));
  CellGrid open_ended;
  open_ended.edges = {0.0, 1.0};  // does not cover the line
  CHECK_THROWS(binned_decoherence(rig.fk, same_axes(open_ended), rig.points));
}

TEST_CASE("csv export lists nonzero cells with a header") {
  DecoRig rig(6);
  const BinnedDecoherence d =
      binned_decoherence(rig.fk, same_axes(CellGrid::uniform_with_tails(-0.8, 0.8, 0.8)), rig.points);
  std::ostringstream os;
  export_deco_csv(d, os);
  const std::string text = os.str();
  CHECK(text.rfind("cA,c1,c2,cB,barA,bar1,bar2,re,im\n", 0) == 0);
  CHECK(text.size() > 64);
}

TEST_SUITE_END();
