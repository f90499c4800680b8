#pragma once

#include <array>
#include <iosfwd>

#include "sorkinlab/fock.hpp"
#include "sorkinlab/resolutions.hpp"

namespace sorkinlab {

// Per-axis cells realizing the delta functions of the decoherence functional
// as finite bins. Edges are strictly increasing and may start/end at +-inf;
// cell c is [edges[c], edges[c+1]).
struct CellGrid {
  std::vector<double> edges;

  int cells() const { return static_cast<int>(edges.size()) - 1; }
  double center(int c) const;
  bool covers_line() const;

  // inner cells of width w covering [lo, lo + ceil((hi-lo)/w) * w) plus two
  // unbounded tail cells, so the cells always cover the numerical spectrum
  static CellGrid uniform_with_tails(double lo, double hi, double w);
  static CellGrid single_cell();  // one all-covering cell
};

// Binned decoherence functional D(c, cbar) on the four-point causet, with the
// xi-side projector chain in causal order A,1,2,B and the xibar side reversed.
// Adjacent same-operator projectors force cbar_B = c_B, so storage runs over
// the seven free indices (c_A, c_1, c_2, c_B, cbar_A, cbar_1, cbar_2).
struct BinnedDecoherence {
  std::array<CellGrid, 4> axes;  // xi_A, xi_1, xi_2, xi_B
  std::array<int, 4> points;     // causet point index per axis
  std::vector<cplx> values;
  double cell_width = 0.0;  // representative inner width

  cplx at(const std::array<int, 4>& c, const std::array<int, 4>& cbar) const;
  cplx& slot(int ca, int c1, int c2, int cb, int ba, int b1, int b2);
  cplx slot(int ca, int c1, int c2, int cb, int ba, int b1, int b2) const;
};

// Materialises D. Guards: <= 12 cells per axis and a dense-storage cap.
BinnedDecoherence binned_decoherence(const FockSpace& fk, const std::array<CellGrid, 4>& axes,
                                     const std::array<int, 4>& points);

// chi(s) as the restricted double sum over cell pairs, with phases and bin
// indicators evaluated at cell centres. Charlie measures f1 xi_1 + f2 xi_2
// against the resolution.
cplx chi_from_deco(const BinnedDecoherence& d, double s, double t, const Resolution& res,
                   double f1, double f2);

// the same sum without Charlie's indicators (no-measurement variant); when
// bob_bar is set the Bob phase uses xibar_B instead of xi_B
cplx chi_from_deco_no_measurement(const BinnedDecoherence& d, double s, double t,
                                  bool bob_bar = false);

// Streaming evaluation of the same quantity that never materialises D, so the
// cell count per axis is not limited by storage. res == nullptr drops the
// indicators.
cplx chi_deco_streamed(const FockSpace& fk, const std::array<CellGrid, 4>& axes,
                       const std::array<int, 4>& points, double s, double t,
                       const Resolution* res, double f1, double f2);

// max_s |chi_noMeas(s) - chi_noMeas(0)| over the s grid.
double marginal_independence_check(const BinnedDecoherence& d, double t,
                                   const std::vector<double>& s_grid);

// Sum of D(c, .) over all cbar cells; equals the single-path chain amplitude
// <vac| Pi_B Pi_2 Pi_1 Pi_A |vac> for each path c (double-to-single path
// integral reduction).
std::vector<cplx> sum_over_bar_paths(const BinnedDecoherence& d);

// nonzero cells as CSV "cA,c1,c2,cB,bA,b1,b2,re,im"
void export_deco_csv(const BinnedDecoherence& d, std::ostream& os, double threshold = 1e-14);

}  // namespace sorkinlab
