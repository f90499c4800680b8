#include <doctest.h>

#include <cmath>
#include <random>

#include "rational_intervals.hpp"
#include "sorkinlab/resolutions.hpp"

using namespace sorkinlab;

TEST_SUITE_BEGIN("resolutions");

TEST_CASE("interval set canonicalisation merges, sorts, drops degenerates") {
  IntervalSet s{Interval{2.0, 3.5}, Interval{0.0, 1.0}, Interval{1.0, 2.0}, Interval{5.0, 5.0}};
  REQUIRE(s.parts().size() == 1);
  CHECK(s.parts()[0] == Interval{0.0, 3.5});
  IntervalSet again(s.parts());
  CHECK(again == s);
}

TEST_CASE("interval set measure") {
  CHECK(IntervalSet{}.measure() == 0.0);
  IntervalSet s{Interval{0.0, 1.0}, Interval{2.0, 3.5}};
  CHECK(s.measure() == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("canonicalisation is idempotent on random messy inputs") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<Interval> parts;
    for (int i = 0; i < 8; ++i) {
      const double a = u(rng);
      parts.push_back(Interval{a, a + std::abs(u(rng))});
    }
    IntervalSet once(parts);
    IntervalSet twice(once.parts());
    CHECK(twice == once);
  }
}

TEST_CASE("r_t at t = 0 returns the window") {
  for (const char* lit : {"uniform:w=1,o=0", "threshold:0", "svc:d=3"}) {
    const Resolution res = Resolution::parse(lit);
    const IntervalSet r = r_t(res, 0.0, Interval{-1.5, 2.5});
    REQUIRE(r.parts().size() == 1);
    CHECK(r.parts()[0] == Interval{-1.5, 2.5});
  }
}

TEST_CASE("uniform width-1 bins follow the closed form") {
  const Resolution res = Resolution::uniform(1.0);
  const Interval d{0.0, 4.0};
  SUBCASE("0 <= t < 1 leaves the per-bin tail [n+t, n+1)") {
    const IntervalSet r = r_t(res, 0.25, d);
    REQUIRE(r.parts().size() == 4);
    for (int n = 0; n < 4; ++n) {
      CHECK(r.parts()[n].lo == doctest::Approx(n + 0.25).epsilon(1e-15));
      CHECK(r.parts()[n].hi == doctest::Approx(n + 1.0).epsilon(1e-15));
    }
    CHECK(r.measure() == doctest::Approx(3.0).epsilon(1e-15));
  }
  SUBCASE("t >= 1 gives the empty set") {
    CHECK(r_t(res, 1.0, d).empty());
    CHECK(r_t(res, 1.7, d).empty());
  }
}

TEST_CASE("uniform r_t measure agrees with Monte Carlo membership sampling") {
  const Resolution res = Resolution::uniform(1.0);
  const Interval d{0.0, 4.0};
  const IntervalSet r = r_t(res, 0.25, d);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  const int n = 200000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const double x = u(rng);
    // x in R_t iff x and x - t share a bin
    const bool member = res.same_bin(x, x - 0.25);
    if (member) ++hits;
    CHECK(member == r.contains(x));
  }
  CHECK(4.0 * hits / n == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("svc r_t matches the exact rational oracle") {
  const int depth = 3;
  const Resolution res = Resolution::svc(depth);
  const ratq::Frac t(1, 10);
  const ratq::RSet oracle = ratq::svc_r_t(depth, t, ratq::RInterval{ratq::Frac(0), ratq::Frac(1)});
  const IntervalSet r = r_t(res, t.value(), Interval{0.0, 1.0});
  REQUIRE(r.parts().size() == oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    CHECK(r.parts()[i].lo == doctest::Approx(oracle[i].lo.value()).epsilon(1e-15));
    CHECK(r.parts()[i].hi == doctest::Approx(oracle[i].hi.value()).epsilon(1e-15));
  }
  CHECK(r.measure() == doctest::Approx(ratq::measure(oracle).value()).epsilon(1e-14));
}

TEST_CASE("nontriviality search: uniform bins cross half measure at t = 1/2") {
  const NontrivialityResult r = nontriviality_search(Resolution::uniform(1.0), Interval{0.0, 4.0});
  CHECK(r.t_star == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.measure_ratio == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("nontriviality search: threshold cut reaches ratio 1/2 at t = 2") {
  const NontrivialityResult r =
      nontriviality_search(Resolution::threshold({0.0}), Interval{-2.0, 2.0});
  CHECK(r.t_star == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r.measure_ratio == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("nontriviality search: svc depth 4 lands strictly between trivial extremes") {
  const NontrivialityResult r = nontriviality_search(Resolution::svc(4), Interval{-0.5, 1.5});
  CHECK(r.measure_ratio > 0.05);
  CHECK(r.measure_ratio < 0.95);
  // confirm with the rational oracle at a nearby rational shift
  const long long denom = 1'000'000;
  const ratq::Frac t(static_cast<long long>(std::llround(r.t_star * denom)), denom);
  const ratq::Frac m =
      ratq::measure(ratq::svc_r_t(4, t, ratq::RInterval{ratq::Frac(-1, 2), ratq::Frac(3, 2)}));
  CHECK(m.value() / 2.0 > 0.04);
  CHECK(m.value() / 2.0 < 0.96);
}

TEST_CASE("continuity probe decays and respects the per-bin Lipschitz bound") {
  const Interval d{0.0, 4.0};
  SUBCASE("uniform bins: |L(t+delta) - L(t)| <= (bins meeting D) |delta|") {
    const Resolution res = Resolution::uniform(1.0);
    const std::vector<double> deltas{0.3, 0.05, 0.01, 1e-3, 1e-5};
    const std::vector<double> probes = continuity_probe(res, d, 0.4, deltas);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      CHECK(probes[i] <= 6.0 * deltas[i] + 1e-12);
    }
  }
  SUBCASE("delta = 0 gives exactly 0") {
    const std::vector<double> p = continuity_probe(Resolution::svc(3), d, 0.2, {0.0});
    CHECK(p[0] == 0.0);
  }
  SUBCASE("svc depth 3 probes decay monotonically toward 0") {
    const std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    const std::vector<double> p =
        continuity_probe(Resolution::svc(3), Interval{-0.5, 1.5}, 0.07, deltas);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] <= p[i - 1] + 1e-12);
    CHECK(p.back() < 1e-4);
  }
}

TEST_CASE("R_t symmetry: lambda(D cap R_t) = lambda((D-t) cap R_-t)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<Resolution> families{Resolution::uniform(0.7, 0.2),
                                         Resolution::threshold({-0.4, 0.9}), Resolution::svc(3)};
  for (const Resolution& res : families) {
    for (int rep = 0; rep < 50; ++rep) {
      const double t = u(rng);
      const double lo = u(rng);
      const Interval d{lo, lo + 1.0 + std::abs(u(rng))};
      const double lhs = r_t(res, t, d).measure();
      const double rhs = r_t(res, -t, Interval{d.lo - t, d.hi - t}).measure();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("resolution literals round-trip") {
  for (const char* lit : {"uniform:w=0.5,o=0.25", "threshold:-1,0,2.5", "svc:d=4",
                          "explicit:[-inf,0);[0,1)|[2,3);[1,2)|[3,inf)"}) {
    const Resolution res = Resolution::parse(lit);
    const Resolution back = Resolution::parse(res.literal());
    for (double x = -4.0; x < 5.0; x += 0.137) {
      for (double y = -4.0; y < 5.0; y += 0.311) {
        CHECK(res.same_bin(x, y) == back.same_bin(x, y));
      }
    }
  }
}

TEST_CASE("resolution invariants are enforced at construction") {
  CHECK_THROWS(Resolution::uniform(0.0));
  CHECK_THROWS(Resolution::explicit_list({IntervalSet::whole()}));  // single bin
  CHECK_THROWS(Resolution::explicit_list(
      {IntervalSet{Interval{-kInf, 0.0}}, IntervalSet{Interval{0.5, kInf}}}));  // gap
  CHECK_THROWS(Resolution::explicit_list(
      {IntervalSet{Interval{-kInf, 0.5}}, IntervalSet{Interval{0.0, kInf}}}));  // overlap
  CHECK_THROWS(Resolution::parse("bogus:1"));
  CHECK_NOTHROW(Resolution::parse("explicit:[-inf,0);[0,inf)"));
}

TEST_SUITE_END();
