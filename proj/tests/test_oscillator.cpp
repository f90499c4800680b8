#include <doctest.h>

#include <cmath>

#include "sorkinlab/oscillator.hpp"

using namespace sorkinlab;

TEST_SUITE_BEGIN("oscillator2d");

TEST_CASE("t = 0 means R_0 = R and chi = 1 for every kick") {
  for (const char* lit : {"uniform:w=1,o=0", "threshold:0", "svc:d=3"}) {
    const Resolution res = Resolution::parse(lit);
    for (double s : {0.0, 0.7, 1.9}) {
      CHECK(std::abs(osc_chi_closed(s, 0.0, res) - cplx(1.0, 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("closed form and 2D quadrature agree across families and kicks") {
  const std::vector<Resolution> families{Resolution::uniform(1.0), Resolution::threshold({0.0}),
                                         Resolution::svc(3)};
  for (const Resolution& res : families) {
    for (double t : {0.25, 0.5}) {
      for (double s : {0.0, 0.4, 1.0, 1.7}) {
        const cplx closed = osc_chi_closed(s, t, res);
        const cplx quad = osc_chi_quadrature(s, t, res);
        CHECK(std::abs(closed - quad) < 1e-6);
      }
    }
  }
}

TEST_CASE("the x+y ideal measurement signals at uniform width-1 bins") {
  const Resolution res = Resolution::uniform(1.0);
  const double t = 0.5;
  const cplx base = osc_chi_closed(0.0, t, res);
  double gap = 0.0;
  for (double s : {0.3, 0.6, 0.9, 1.2, 1.5}) {
    gap = std::max(gap, std::abs(osc_chi_closed(s, t, res) - base));
  }
  CHECK(gap > 1e-3);
  SUBCASE("threshold bins also produce a non-constant chi") {
    const Resolution thr = Resolution::threshold({0.0});
    const cplx b2 = osc_chi_closed(0.0, t, thr);
    double g2 = 0.0;
    for (double s : {0.5, 1.0, 1.5}) g2 = std::max(g2, std::abs(osc_chi_closed(s, t, thr) - b2));
    CHECK(g2 > 1e-3);
  }
}

TEST_CASE("pure point approximation evades the signal") {
  const double t = 0.5;
  for (double eps : {0.5, 0.25}) {
    const cplx base = osc_chi_pure_point(0.0, t, eps);
    double gap = 0.0;
    for (double s : {0.4, 0.8, 1.3}) {
      gap = std::max(gap, std::abs(osc_chi_pure_point(s, t, eps) - base));
    }
    CHECK(gap <= 1e-6);
  }
  SUBCASE("the operator approximation bound holds on the lattice") {
    for (double eps : {0.5, 0.25}) {
      CHECK(osc_pure_point_bound(eps) <= eps + 1e-12);
    }
  }
  SUBCASE("contrast: the strip measurement at the same eps resolution does signal") {
    const double eps = 0.5;
    const Resolution res = Resolution::uniform(eps);
    const cplx base = osc_chi_closed(0.0, t, res);
    double gap = 0.0;
    for (double s : {0.2, 0.5, 0.8}) {
      gap = std::max(gap, std::abs(osc_chi_closed(s, t, res) - base));
    }
    CHECK(gap > 1e-4);
  }
  SUBCASE("eps below the lattice resolution is rejected") {
    CHECK_THROWS(osc_chi_pure_point(0.0, t, 1e-4));
  }
}

TEST_SUITE_END();
