#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "qsphase/multilinear.hpp"
#include "test_util.hpp"

using namespace qsphase;
using testutil::rng;

namespace {

double max_pair_dist(const SU2Pair& p, const SU2Pair& q) {
  double worst = 0.0;
  for (std::size_t j = 0; j < p.a.size(); ++j) {
    worst = std::max(worst, std::abs(p.a.sample(j) - q.a.sample(j)));
    worst = std::max(worst, std::abs(p.b.sample(j) - q.b.sample(j)));
  }
  return worst;
}

}  // namespace

TEST_CASE("multilinear terms", "[multilinear]") {
  CircleGrid g(64);

  SECTION("T_0 is the constant 1") {
    auto t = multilinear_T(0, CoeffSequence(0, {cplx(0.5, 0.0)}), g);
    CHECK(std::abs(mean_value(t) - 1.0) < 1e-15);
    CHECK(std::abs(sup_abs(t) - 1.0) < 1e-15);
  }

  SECTION("T_1 is the linear fourier series") {
    CoeffSequence F(-2, {cplx(0.3, 0.1), cplx(0.0, 0.0), cplx(-0.2, 0.4),
                         cplx(0.1, -0.1)});
    auto t = multilinear_T(1, F, g);
    auto lin = CircleFunction::from_coeffs(
        g, {{-2, F.at(-2)}, {0, F.at(0)}, {1, F.at(1)}});
    CHECK(l2_mean_dist(t, lin) < 1e-14);
  }

  SECTION("T_2 for a two-entry sequence is the single hand-enumerated term") {
    const cplx f0(0.2, 0.3), f1(-0.4, 0.1);
    CoeffSequence F(0, {f0, f1});
    auto t = multilinear_T(2, F, g);
    // only tuple is (j_1, j_2) = (0, 1): F_0 z^0 * (-conj(F_1) z^{-1})
    const cplx want_coeff = f0 * (-std::conj(f1));
    for (int n = g.min_freq(); n <= g.max_freq(); ++n) {
      cplx want = (n == -1) ? want_coeff : cplx(0.0, 0.0);
      CHECK(std::abs(t.coeff(n) - want) < 1e-15);
    }
  }

  SECTION("caps are enforced") {
    CoeffSequence F(0, std::vector<cplx>(33, cplx(0.01, 0.0)));
    CHECK_THROWS_AS(multilinear_T(2, F, CircleGrid(512)), OracleTooLarge);
    CoeffSequence small(0, {cplx(0.1, 0.0)});
    CHECK_THROWS_AS(multilinear_T(6, small, g), OracleTooLarge);
    CHECK_THROWS_AS(multilinear_T(-1, small, g), OracleTooLarge);
  }
}

TEST_CASE("nlfs via multilinear expansion", "[multilinear]") {
  CircleGrid g(128);

  SECTION("zero sequence") {
    auto m = nlfs_via_multilinear(CoeffSequence(), 3, g);
    CHECK(sup_abs(m.pair.b) < 1e-15);
    CHECK(std::abs(mean_value(m.pair.a) - 1.0) < 1e-15);
  }

  SECTION("one-point sequence agrees within the reported tail") {
    CoeffSequence F(0, {cplx(0.0, 0.3)});
    auto m = nlfs_via_multilinear(F, 3, g);
    CHECK(max_pair_dist(m.pair, nlfs_finite(F, g)) <= m.tail_bound);
  }

  SECTION("random sequence with ||F||_1 = 0.3, n_max = 5") {
    auto r = rng(301);
    auto entries = testutil::random_complex(r, 6, 1.0);
    double l1 = 0.0;
    for (const cplx& e : entries) l1 += std::abs(e);
    for (cplx& e : entries) e *= 0.3 / l1;
    CoeffSequence F(-2, entries);
    REQUIRE(std::abs(F.norm_l1() - 0.3) < 1e-14);

    auto m = nlfs_via_multilinear(F, 5, g);
    const double factorial_tail = std::pow(0.3, 6) / 720.0;  // ~1e-6
    const double observed = max_pair_dist(m.pair, nlfs_finite(F, g));
    CHECK(observed <= factorial_tail);
    CHECK(observed <= m.tail_bound);
    CHECK(m.tail_bound < 1.5e-6);
  }

  SECTION("l1 cap enforced") {
    CoeffSequence big(0, {cplx(0.6, 0.0)});
    CHECK_THROWS_AS(nlfs_via_multilinear(big, 3, g), OracleTooLarge);
  }
}

TEST_CASE("wiener algebra probes", "[multilinear]") {
  SECTION("identical sequences") {
    CoeffSequence F(0, {cplx(0.05, 0.02), cplx(0.0, -0.04)});
    auto p = wiener_lipschitz_probe(F, F, 0.3);
    CHECK(p.f_dist_l1 == 0.0);
    CHECK(p.b_dist_A < 1e-15);
  }

  SECTION("worked example") {
    CoeffSequence F(0, {cplx(0.1, 0.0)});
    CoeffSequence G(0, {cplx(0.12, 0.0)});
    auto p = wiener_lipschitz_probe(F, G, 0.12);
    CHECK(p.b_dist_A <= p.forward_bound);
    REQUIRE(p.reverse_checked);
    CHECK(p.f_dist_l1 <= p.reverse_bound);
  }

  SECTION("random pairs at the two stated radii") {
    auto r = rng(302);
    for (int trial = 0; trial < 20; ++trial) {
      for (double R : {0.3, 0.36}) {
        auto e1 = testutil::random_complex(r, 5, 1.0);
        auto e2 = e1;
        auto bump = testutil::random_complex(r, 5, 0.2);
        for (std::size_t i = 0; i < e2.size(); ++i) e2[i] += bump[i];
        auto rescale = [&](std::vector<cplx>& v, double target) {
          double l1 = 0.0;
          for (const cplx& c : v) l1 += std::abs(c);
          for (cplx& c : v) c *= target / l1;
        };
        std::uniform_real_distribution<double> u(0.3, 1.0);
        rescale(e1, R * u(r));
        rescale(e2, R * u(r));
        CoeffSequence F(-2, e1), G(-2, e2);
        auto p = wiener_lipschitz_probe(F, G, R);  // throws on violation
        CHECK(p.b_dist_A <= p.forward_bound + 1e-12);
        if (p.reverse_checked)
          CHECK(p.f_dist_l1 <= p.reverse_bound + 1e-12);
      }
    }
  }

  SECTION("radius precondition enforced") {
    CoeffSequence F(0, {cplx(0.4, 0.0)});
    CHECK_THROWS_AS(wiener_lipschitz_probe(F, F, 0.3), Error);
  }
}
