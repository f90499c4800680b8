#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "sorkinlab/gaussian.hpp"

using namespace sorkinlab;

namespace {
constexpr double kPi = 3.14159265358979323846;

cplx bch_rhs(double s, double t, double w_ff, double w_gg, cplx w_fg, double d_fg) {
  // e^{-(i/2) s t Delta(f,g)} e^{-W(sf+tg, sf+tg)/2} with w_gf = w_fg - i d_fg
  const cplx w_gf = w_fg - cplx(0.0, 1.0) * d_fg;
  const cplx w_quad = s * s * w_ff + t * t * w_gg + s * t * (w_fg + w_gf);
  return std::exp(cplx(0.0, -0.5 * s * t * d_fg)) * std::exp(-0.5 * w_quad);
}

double gaussian_p(double lambda, double w_ff) {
  return std::exp(-lambda * lambda / (2.0 * w_ff)) / std::sqrt(2.0 * kPi * w_ff);
}
}  // namespace

TEST_SUITE_BEGIN("gaussian_state");

TEST_CASE("moments: closed form and quadrature oracle") {
  CHECK(moment(0, 3.0) == 1.0);
  CHECK(moment(1, 3.0) == 0.0);
  CHECK(moment(2, 3.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(moment(4, 3.0) == doctest::Approx(27.0).epsilon(1e-15));
  SUBCASE("moment(6, 2) equals the quadrature of lambda^6 against p") {
    const double w = 2.0;
    auto f = [w](double l) { return cplx(std::pow(l, 6) * gaussian_p(l, w), 0.0); };
    const double r = 12.0 * std::sqrt(w);
    const cplx q = integrate(f, -r, r, 1e-12).value;
    CHECK(moment(6, w) == doctest::Approx(q.real()).epsilon(1e-8));
  }
  SUBCASE("all moments up to 8 match quadrature") {
    const double w = 0.7;
    for (int n = 0; n <= 8; ++n) {
      auto f = [w, n](double l) { return cplx(std::pow(l, n) * gaussian_p(l, w), 0.0); };
      const cplx q = integrate(f, -12.0 * std::sqrt(w), 12.0 * std::sqrt(w), 1e-13).value;
      CHECK(moment(n, w) == doctest::Approx(q.real()).epsilon(1e-8));
    }
  }
}

TEST_CASE("characteristic function") {
  CHECK(char_fn(0.0, 5.0) == 1.0);
  CHECK(char_fn(1.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  SUBCASE("equals sqrt(2 pi) times the Fourier transform of p") {
    const double w = 1.3;
    auto p = [w](double l) { return cplx(gaussian_p(l, w), 0.0); };
    for (double t : {0.0, 0.5, 1.7}) {
      const cplx ft = fourier(p, t, -14.0 * std::sqrt(w), 14.0 * std::sqrt(w));
      CHECK(char_fn(t, w) == doctest::Approx((std::sqrt(2.0 * kPi) * ft).real()).epsilon(1e-10));
      CHECK(std::abs(ft.imag()) < 1e-12);
    }
  }
}

TEST_CASE("complex density q") {
  SUBCASE("t = 0 reduces to the real Gaussian p") {
    QContext ctx{1.4, 0.8, cplx(0.3, 0.1), 0.0};
    for (double l : {-2.0, -0.3, 0.0, 1.1}) {
      CHECK(density_q(ctx, l).real() == doctest::Approx(gaussian_p(l, 1.4)).epsilon(1e-14));
      CHECK(std::abs(density_q(ctx, l).imag()) < 1e-15);
    }
  }
  SUBCASE("normalisation: integral of q is e^{-t^2 W(g,g)/2}") {
    QContext ctx{0.9, 1.2, cplx(0.4, 0.25), 0.8};
    const cplx total = expect_zeta_exp([](double) { return cplx(1.0, 0.0); }, ctx);
    CHECK(total.real() == doctest::Approx(char_fn(ctx.t, ctx.w_gg)).epsilon(1e-8));
    CHECK(std::abs(total.imag()) < 1e-8);
  }
  SUBCASE("sqrt(2 pi) F{q}(s) reproduces the BCH closed form on an (s,t) grid") {
    const double w_ff = 1.1, w_gg = 0.6;
    const cplx w_fg(0.35, 0.2);
    const double d_fg = 2.0 * w_fg.imag();
    for (double t : {0.3, 1.0, 1.6}) {
      QContext ctx{w_ff, w_gg, w_fg, t};
      for (double s : {-1.2, 0.0, 0.4, 1.5}) {
        auto q = [&](double l) { return density_q(ctx, l); };
        const double r = 10.0 * std::sqrt(w_ff) + std::abs(t * w_fg.real()) + 5.0;
        const cplx ft = std::sqrt(2.0 * kPi) * fourier(q, s, -r, r);
        const cplx expected = bch_rhs(s, t, w_ff, w_gg, w_fg, d_fg);
        CHECK(std::abs(ft - expected) < 1e-8);
      }
    }
  }
  SUBCASE("degenerate width is rejected") {
    QContext ctx{0.0, 1.0, cplx(0.0, 0.0), 1.0};
    CHECK_THROWS(density_q(ctx, 0.0));
  }
}

TEST_CASE("expect_zeta_exp closed-form examples") {
  QContext ctx{0.8, 1.1, cplx(0.3, 0.22), 0.9};
  const double d_fg = 2.0 * ctx.w_fg.imag();
  SUBCASE("zeta = 1") {
    const cplx v = expect_zeta_exp([](double) { return cplx(1.0, 0.0); }, ctx);
    CHECK(std::abs(v - cplx(char_fn(ctx.t, ctx.w_gg), 0.0)) < 1e-9);
  }
  SUBCASE("zeta = e^{is lambda} gives the BCH form") {
    for (double s : {-0.8, 0.6, 2.0}) {
      auto zeta = [s](double l) { return std::exp(cplx(0.0, s * l)); };
      const cplx v = expect_zeta_exp(zeta, ctx);
      CHECK(std::abs(v - bch_rhs(s, ctx.t, ctx.w_ff, ctx.w_gg, ctx.w_fg, d_fg)) < 1e-8);
    }
  }
  SUBCASE("half-line indicator at t = 0 gives 1/2") {
    QContext sym{0.8, 1.1, cplx(0.3, 0.22), 0.0};
    auto zeta = [](double l) { return cplx(l >= 0.0 ? 1.0 : 0.0, 0.0); };
    const cplx v = expect_zeta_exp(zeta, sym, {0.0});
    CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("Weierstrass transform") {
  SUBCASE("constants are fixed points") {
    for (cplx z : {cplx(0.0, 0.0), cplx(1.3, -0.7), cplx(-2.0, 2.5)}) {
      const cplx v = weierstrass([](double) { return cplx(2.5, -1.0); }, z);
      CHECK(std::abs(v - cplx(2.5, -1.0)) < 1e-10);
    }
  }
  SUBCASE("shift identity W{zeta(a . + b)}(z) = W{zeta(a .)}(z + b/a)") {
    auto zeta = [](double x) { return std::exp(cplx(0.0, 0.7 * x)) / (1.0 + x * x); };
    const double a = 1.7, b = -0.9;
    for (cplx z : {cplx(0.2, 0.0), cplx(-1.0, 0.8)}) {
      const cplx lhs = weierstrass([&](double x) { return zeta(a * x + b); }, z);
      const cplx rhs = weierstrass([&](double x) { return zeta(a * x); }, z + b / a);
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
  SUBCASE("plane waves: W{e^{i omega .}}(z) = e^{i omega z - omega^2}") {
    for (double omega : {0.4, 1.1}) {
      for (cplx z : {cplx(0.5, 0.0), cplx(-0.3, 1.2)}) {
        const cplx v = weierstrass([omega](double x) { return std::exp(cplx(0.0, omega * x)); }, z);
        const cplx expected = std::exp(cplx(0.0, 1.0) * omega * z - omega * omega);
        CHECK(std::abs(v - expected) < 1e-10);
      }
    }
  }
  SUBCASE("indicator transforms match the erf closed form at real arguments") {
    const IntervalSet s{Interval{-0.7, 0.4}, Interval{1.2, 2.0}};
    for (double z : {-1.0, 0.0, 0.9, 3.0}) {
      auto zeta = [&s](double x) { return cplx(s.contains(x) ? 1.0 : 0.0, 0.0); };
      const cplx v = weierstrass(zeta, cplx(z, 0.0), {-0.7, 0.4, 1.2, 2.0});
      CHECK(v.real() == doctest::Approx(weierstrass_indicator(s, z)).epsilon(1e-10));
    }
  }
}

TEST_CASE("expect_zeta_exp agrees with the Weierstrass route over random draws") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    QContext ctx;
    ctx.w_ff = 0.3 + 2.7 * u(rng);
    ctx.w_gg = 0.2 + 2.3 * u(rng);
    const double rho = 0.9 * (2.0 * u(rng) - 1.0);
    const double phase = 2.0 * kPi * u(rng);
    ctx.w_fg = rho * std::sqrt(ctx.w_ff * ctx.w_gg) * std::exp(cplx(0.0, phase));
    ctx.t = 2.0 * (2.0 * u(rng) - 1.0);

    const double s = 1.5 * (2.0 * u(rng) - 1.0);
    const double a = -2.0 + u(rng);
    const double b = a + 0.5 + 2.0 * u(rng);
    const std::vector<std::function<cplx(double)>> zetas{
        [](double) { return cplx(1.0, 0.0); },
        [s](double l) { return std::exp(cplx(0.0, s * l)); },
        [a, b](double l) { return cplx((l >= a && l < b) ? 1.0 : 0.0, 0.0); },
        [](double l) { return cplx(std::clamp(l * l - 0.5 * l, -3.0, 3.0), 0.0); }};
    const std::vector<double> bps{a, b};
    for (std::size_t k = 0; k < zetas.size(); ++k) {
      const cplx direct = expect_zeta_exp(zetas[k], ctx, bps);
      const cplx via_w = expect_via_weierstrass(zetas[k], ctx, bps);
      CHECK(std::abs(direct - via_w) < 1e-7);
    }
  }
}

TEST_CASE("Fourier round trip reproduces a Gaussian") {
  const double w = 0.9;
  auto p = [w](double l) { return cplx(gaussian_p(l, w), 0.0); };
  const double r = 14.0 * std::sqrt(w);
  // F then inverse F (inverse = conjugate convention e^{-itx})
  for (double x : {-1.0, 0.0, 0.7}) {
    auto ft = [&](double t) { return fourier(p, t, -r, r); };
    auto inv = [&](double xx) {
      auto g = [&](double t) { return ft(t) * std::exp(cplx(0.0, -t * xx)); };
      return integrate(g, -40.0, 40.0, 1e-11).value / std::sqrt(2.0 * kPi);
    };
    CHECK(std::abs(inv(x) - p(x)) < 1e-9);
  }
}

TEST_SUITE_END();
