#include "sorkinlab/deco.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sorkinlab {

namespace {

struct AxisBasis {
  Eigen::MatrixXcd v;      // eigenvectors of phi at the axis point
  Eigen::VectorXd d;       // eigenvalues
  std::vector<int> cell;   // cell index per eigenvalue
};

AxisBasis axis_basis(const FockSpace& fk, int point, const CellGrid& grid) {
  AxisBasis b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(fk.field_ops[static_cast<std::size_t>(point)]);
  if (es.info() != Eigen::Success) throw std::runtime_error("deco: eigensolve failed");
  b.v = es.eigenvectors();
  b.d = es.eigenvalues();
  b.cell.resize(static_cast<std::size_t>(b.d.size()));
  for (Eigen::Index i = 0; i < b.d.size(); ++i) {
    int c = grid.cells() - 1;
    for (int k = 0; k < grid.cells(); ++k) {
      if (b.d(i) >= grid.edges[static_cast<std::size_t>(k)] &&
          b.d(i) < grid.edges[static_cast<std::size_t>(k) + 1]) {
        c = k;
        break;
      }
    }
    b.cell[static_cast<std::size_t>(i)] = c;
  }
  return b;
}

// projector onto the eigenspaces whose eigenvalue falls in the given cell
Eigen::VectorXcd apply_cell_projector(const AxisBasis& b, int cell, const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y = b.v.adjoint() * x;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (b.cell[static_cast<std::size_t>(i)] != cell) y(i) = cplx(0.0, 0.0);
  }
  return b.v * y;
}

// diagonal operator sum_c phase(center(c)) P(c) applied to a vector
Eigen::VectorXcd apply_cell_phases(const AxisBasis& b, const CellGrid& grid,
                                   const std::function<cplx(double)>& phase,
                                   const Eigen::VectorXcd& x) {
  Eigen::VectorXcd y = b.v.adjoint() * x;
  std::vector<cplx> per_cell(static_cast<std::size_t>(grid.cells()));
  for (int c = 0; c < grid.cells(); ++c) per_cell[static_cast<std::size_t>(c)] = phase(grid.center(c));
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y(i) *= per_cell[static_cast<std::size_t>(b.cell[static_cast<std::size_t>(i)])];
  }
  return b.v * y;
}

}  // namespace

double CellGrid::center(int c) const {
  const double lo = edges[static_cast<std::size_t>(c)];
  const double hi = edges[static_cast<std::size_t>(c) + 1];
  if (std::isfinite(lo) && std::isfinite(hi)) return 0.5 * (lo + hi);
  // representative for a tail cell: half a typical inner width past the edge
  double w = 1.0;
  if (edges.size() > 3) w = edges[2] - edges[1];
  if (!std::isfinite(lo)) return hi - 0.5 * w;
  return lo + 0.5 * w;
}

bool CellGrid::covers_line() const {
  return edges.size() >= 2 && edges.front() == -kInf && edges.back() == kInf;
}

CellGrid CellGrid::uniform_with_tails(double lo, double hi, double w) {
  if (!(w > 0.0) || !(hi > lo)) throw std::invalid_argument("uniform_with_tails: bad cell spec");
  CellGrid g;
  g.edges.push_back(-kInf);
  const int n = static_cast<int>(std::ceil((hi - lo) / w - 1e-12));
  for (int i = 0; i <= n; ++i) g.edges.push_back(lo + i * w);
  g.edges.push_back(kInf);
  return g;
}

CellGrid CellGrid::single_cell() {
  CellGrid g;
  g.edges = {-kInf, kInf};
  return g;
}

cplx& BinnedDecoherence::slot(int ca, int c1, int c2, int cb, int ba, int b1, int b2) {
  const long nA = axes[0].cells(), n1 = axes[1].cells(), n2 = axes[2].cells(), nB = axes[3].cells();
  long idx = ca;
  idx = idx * n1 + c1;
  idx = idx * n2 + c2;
  idx = idx * nB + cb;
  idx = idx * nA + ba;
  idx = idx * n1 + b1;
  idx = idx * n2 + b2;
  return values[static_cast<std::size_t>(idx)];
}

cplx BinnedDecoherence::slot(int ca, int c1, int c2, int cb, int ba, int b1, int b2) const {
  return const_cast<BinnedDecoherence*>(this)->slot(ca, c1, c2, cb, ba, b1, b2);
}

cplx BinnedDecoherence::at(const std::array<int, 4>& c, const std::array<int, 4>& cbar) const {
  if (c[3] != cbar[3]) return cplx(0.0, 0.0);  // orthogonal Bob projectors
  return slot(c[0], c[1], c[2], c[3], cbar[0], cbar[1], cbar[2]);
}

BinnedDecoherence binned_decoherence(const FockSpace& fk, const std::array<CellGrid, 4>& axes,
                                     const std::array<int, 4>& points) {
  for (const CellGrid& g : axes) {
    if (g.cells() < 1) throw std::invalid_argument("deco: empty cell grid");
    if (g.cells() > 12) throw std::invalid_argument("deco size guard: more than 12 cells on an axis");
    if (!g.covers_line()) throw std::invalid_argument("deco: cells must cover the numerical spectrum");
  }
  const long nA = axes[0].cells(), n1 = axes[1].cells(), n2 = axes[2].cells(), nB = axes[3].cells();
  const long n_paths = nA * n1 * n2;
  const long total = n_paths * nB * n_paths;
  if (total > (1L << 25)) throw std::invalid_argument("deco size guard: cell-pair storage too large");

  BinnedDecoherence d;
  d.axes = axes;
  d.points = points;
  d.values.assign(static_cast<std::size_t>(total), cplx(0.0, 0.0));
  {
    double w = kInf;
    for (const CellGrid& g : axes) {
      for (std::size_t i = 0; i + 1 < g.edges.size(); ++i) {
        const double len = g.edges[i + 1] - g.edges[i];
        if (std::isfinite(len)) w = std::min(w, len);
      }
    }
    d.cell_width = std::isfinite(w) ? w : 0.0;
  }

  const AxisBasis ba = axis_basis(fk, points[0], axes[0]);
  const AxisBasis b1 = axis_basis(fk, points[1], axes[1]);
  const AxisBasis b2 = axis_basis(fk, points[2], axes[2]);
  const AxisBasis bb = axis_basis(fk, points[3], axes[3]);

  // beta(cA,c1,c2) = P2 P1 PA |vac>
  std::vector<Eigen::VectorXcd> beta(static_cast<std::size_t>(n_paths));
  for (int ca = 0; ca < nA; ++ca) {
    const Eigen::VectorXcd va = apply_cell_projector(ba, ca, fk.vacuum);
    for (int c1 = 0; c1 < n1; ++c1) {
      const Eigen::VectorXcd v1 = apply_cell_projector(b1, c1, va);
      for (int c2 = 0; c2 < n2; ++c2) {
        beta[static_cast<std::size_t>((ca * n1 + c1) * n2 + c2)] = apply_cell_projector(b2, c2, v1);
      }
    }
  }
  // D = <beta(cbar)| P_B(cB) |beta(c)>
  for (int cb = 0; cb < nB; ++cb) {
    std::vector<Eigen::VectorXcd> gamma(static_cast<std::size_t>(n_paths));
    for (long p = 0; p < n_paths; ++p) {
      gamma[static_cast<std::size_t>(p)] =
          apply_cell_projector(bb, cb, beta[static_cast<std::size_t>(p)]);
    }
    for (int ca = 0; ca < nA; ++ca) {
      for (int c1 = 0; c1 < n1; ++c1) {
        for (int c2 = 0; c2 < n2; ++c2) {
          const long p = (ca * n1 + c1) * n2 + c2;
          for (int ba_ = 0; ba_ < nA; ++ba_) {
            for (int b1_ = 0; b1_ < n1; ++b1_) {
              for (int b2_ = 0; b2_ < n2; ++b2_) {
                const long q = (ba_ * n1 + b1_) * n2 + b2_;
                d.slot(ca, c1, c2, cb, ba_, b1_, b2_) =
                    beta[static_cast<std::size_t>(q)].adjoint() * gamma[static_cast<std::size_t>(p)];
              }
            }
          }
        }
      }
    }
  }
  return d;
}

cplx chi_from_deco(const BinnedDecoherence& d, double s, double t, const Resolution& res,
                   double f1, double f2) {
  const int nA = d.axes[0].cells(), n1 = d.axes[1].cells(), n2 = d.axes[2].cells(),
            nB = d.axes[3].cells();
  cplx acc{0.0, 0.0};
  for (int ca = 0; ca < nA; ++ca) {
    const double xa = d.axes[0].center(ca);
    for (int ba = 0; ba < nA; ++ba) {
      const double xba = d.axes[0].center(ba);
      const cplx alice = std::exp(cplx(0.0, -s * (xa - xba)));
      for (int c1 = 0; c1 < n1; ++c1) {
        for (int c2 = 0; c2 < n2; ++c2) {
          const double y = f1 * d.axes[1].center(c1) + f2 * d.axes[2].center(c2);
          for (int b1 = 0; b1 < n1; ++b1) {
            for (int b2 = 0; b2 < n2; ++b2) {
              const double yb = f1 * d.axes[1].center(b1) + f2 * d.axes[2].center(b2);
              if (!res.same_bin(y, yb)) continue;
              for (int cb = 0; cb < nB; ++cb) {
                const cplx bob = std::exp(cplx(0.0, t * d.axes[3].center(cb)));
                acc += d.slot(ca, c1, c2, cb, ba, b1, b2) * alice * bob;
              }
            }
          }
        }
      }
    }
  }
  return acc;
}

cplx chi_from_deco_no_measurement(const BinnedDecoherence& d, double s, double t, bool bob_bar) {
  const int nA = d.axes[0].cells(), n1 = d.axes[1].cells(), n2 = d.axes[2].cells(),
            nB = d.axes[3].cells();
  (void)bob_bar;  // cbar_B = c_B by projector orthogonality, so both variants coincide
  cplx acc{0.0, 0.0};
  for (int ca = 0; ca < nA; ++ca) {
    const double xa = d.axes[0].center(ca);
    for (int ba = 0; ba < nA; ++ba) {
      const cplx alice = std::exp(cplx(0.0, -s * (xa - d.axes[0].center(ba))));
      for (int c1 = 0; c1 < n1; ++c1) {
        for (int c2 = 0; c2 < n2; ++c2) {
          for (int b1 = 0; b1 < n1; ++b1) {
            for (int b2 = 0; b2 < n2; ++b2) {
              for (int cb = 0; cb < nB; ++cb) {
                const cplx bob = std::exp(cplx(0.0, t * d.axes[3].center(cb)));
                acc += d.slot(ca, c1, c2, cb, ba, b1, b2) * alice * bob;
              }
            }
          }
        }
      }
    }
  }
  return acc;
}

cplx chi_deco_streamed(const FockSpace& fk, const std::array<CellGrid, 4>& axes,
                       const std::array<int, 4>& points, double s, double t,
                       const Resolution* res, double f1, double f2) {
  for (const CellGrid& g : axes) {
    if (!g.covers_line()) throw std::invalid_argument("deco: cells must cover the numerical spectrum");
  }
  const AxisBasis ba = axis_basis(fk, points[0], axes[0]);
  const AxisBasis b1 = axis_basis(fk, points[1], axes[1]);
  const AxisBasis b2 = axis_basis(fk, points[2], axes[2]);
  const AxisBasis bb = axis_basis(fk, points[3], axes[3]);

  const Eigen::VectorXcd va =
      apply_cell_phases(ba, axes[0], [s](double x) { return std::exp(cplx(0.0, -s * x)); }, fk.vacuum);

  // accumulate R_n = sum over (c1,c2) in bin n of P2(c2) P1(c1) |va>
  std::map<long long, Eigen::VectorXcd> r_bins;
  Eigen::VectorXcd r_all = Eigen::VectorXcd::Zero(fk.dim);
  for (int c1 = 0; c1 < axes[1].cells(); ++c1) {
    const Eigen::VectorXcd v1 = apply_cell_projector(b1, c1, va);
    for (int c2 = 0; c2 < axes[2].cells(); ++c2) {
      const Eigen::VectorXcd v2 = apply_cell_projector(b2, c2, v1);
      if (res) {
        const double y = f1 * axes[1].center(c1) + f2 * axes[2].center(c2);
        const long long n = res->locate(y);
        auto it = r_bins.find(n);
        if (it == r_bins.end()) {
          r_bins.emplace(n, v2);
        } else {
          it->second += v2;
        }
      } else {
        r_all += v2;
      }
    }
  }
  auto bob_quadratic = [&](const Eigen::VectorXcd& r) {
    const Eigen::VectorXcd tr =
        apply_cell_phases(bb, axes[3], [t](double x) { return std::exp(cplx(0.0, t * x)); }, r);
    return (r.adjoint() * tr)(0, 0);
  };
  if (!res) return bob_quadratic(r_all);
  cplx acc{0.0, 0.0};
  for (const auto& [n, r] : r_bins) acc += bob_quadratic(r);
  return acc;
}

double marginal_independence_check(const BinnedDecoherence& d, double t,
                                   const std::vector<double>& s_grid) {
  const cplx base = chi_from_deco_no_measurement(d, 0.0, t);
  double dev = 0.0;
  for (double s : s_grid) {
    dev = std::max(dev, std::abs(chi_from_deco_no_measurement(d, s, t) - base));
  }
  return dev;
}

std::vector<cplx> sum_over_bar_paths(const BinnedDecoherence& d) {
  const int nA = d.axes[0].cells(), n1 = d.axes[1].cells(), n2 = d.axes[2].cells(),
            nB = d.axes[3].cells();
  std::vector<cplx> out(static_cast<std::size_t>(nA * n1 * n2 * nB), cplx(0.0, 0.0));
  std::size_t idx = 0;
  for (int ca = 0; ca < nA; ++ca) {
    for (int c1 = 0; c1 < n1; ++c1) {
      for (int c2 = 0; c2 < n2; ++c2) {
        for (int cb = 0; cb < nB; ++cb, ++idx) {
          cplx acc{0.0, 0.0};
          for (int ba = 0; ba < nA; ++ba) {
            for (int b1 = 0; b1 < n1; ++b1) {
              for (int b2 = 0; b2 < n2; ++b2) {
                acc += d.slot(ca, c1, c2, cb, ba, b1, b2);
              }
            }
          }
          out[idx] = acc;
        }
      }
    }
  }
  return out;
}

void export_deco_csv(const BinnedDecoherence& d, std::ostream& os, double threshold) {
  os << "cA,c1,c2,cB,barA,bar1,bar2,re,im\n";
  char buf[96];
  const int nA = d.axes[0].cells(), n1 = d.axes[1].cells(), n2 = d.axes[2].cells(),
            nB = d.axes[3].cells();
  for (int ca = 0; ca < nA; ++ca) {
    for (int c1 = 0; c1 < n1; ++c1) {
      for (int c2 = 0; c2 < n2; ++c2) {
        for (int cb = 0; cb < nB; ++cb) {
          for (int ba = 0; ba < nA; ++ba) {
            for (int b1 = 0; b1 < n1; ++b1) {
              for (int b2 = 0; b2 < n2; ++b2) {
                const cplx v = d.slot(ca, c1, c2, cb, ba, b1, b2);
                if (std::abs(v) <= threshold) continue;
                std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%d,%d,%d,%.17g,%.17g\n", ca, c1, c2,
                              cb, ba, b1, b2, v.real(), v.imag());
                os << buf;
              }
            }
          }
        }
      }
    }
  }
}

}  // namespace sorkinlab
