#include "sorkinlab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace sorkinlab {

namespace {

// (G7,K15) nodes and weights, QUADPACK dqk15 values.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
  cplx k15;
  double error;
};

PanelResult gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  cplx fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  cplx k15{0.0, 0.0}, g7{0.0, 0.0};
  for (int i = 0; i < 7; ++i) {
    k15 += kWgk[i] * (fv[i] + fv[14 - i]);
  }
  k15 += kWgk[7] * fv[7];
  for (int i = 0; i < 3; ++i) {
    g7 += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  }
  g7 += kWg[3] * fv[7];
  k15 *= h;
  g7 *= h;
  return PanelResult{k15, std::abs(k15 - g7)};
}

void adapt(const std::function<cplx(double)>& f, double a, double b, double tol,
           int depth, int max_depth, QuadratureResult& out) {
  PanelResult p = gk15(f, a, b);
  out.evaluations += 15;
  if (p.error <= tol || depth >= max_depth) {
    out.value += p.k15;
    out.error += p.error;
    if (p.error > tol && depth >= max_depth) out.converged = false;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, tol / 2, depth + 1, max_depth, out);
  adapt(f, c, b, tol / 2, depth + 1, max_depth, out);
}

}  // namespace

QuadratureResult integrate(const std::function<cplx(double)>& f, double a, double b,
                           double abs_tol, int max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  adapt(f, a, b, abs_tol, 0, max_depth, out);
  return out;
}

QuadratureResult integrate_split(const std::function<cplx(double)>& f, double a, double b,
                                 const std::vector<double>& breakpoints,
                                 double abs_tol, int max_depth) {
  std::vector<double> pts{a, b};
  for (double x : breakpoints) {
    if (x > a && x < b) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  QuadratureResult out;
  const double tol = abs_tol / static_cast<double>(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    adapt(f, pts[i], pts[i + 1], tol, 0, max_depth, out);
  }
  return out;
}

}  // namespace sorkinlab
