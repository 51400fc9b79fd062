#include <cmath>
#include <random>

#include "doctest.h"
#include "spb/logspace.hpp"
#include "spb/sp59.hpp"

using namespace spb;

TEST_CASE("cone solid angle matches closed forms in two and three dimensions") {
    // n = 2: the cap fraction is theta / pi
    for (double rate : {0.1, 0.3, 0.8}) {
        const ConeGeometry g = cone_half_angle(2, rate);
        CHECK(g.half_angle ==
              doctest::Approx(M_PI * std::exp(-2.0 * rate)).epsilon(1e-10));
    }
    // n = 3: the cap fraction is (1 - cos theta) / 2
    for (double rate : {0.2, 0.5, 1.0}) {
        const ConeGeometry g = cone_half_angle(3, rate);
        const double want = std::acos(1.0 - 2.0 * std::exp(-3.0 * rate));
        CHECK(g.half_angle == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("cone solver reports a small residual at large n") {
    for (std::size_t n : {100u, 10000u, 1000000u}) {
        const ConeGeometry g = cone_half_angle(n, 0.5);
        CHECK(std::fabs(g.residual) <= 1e-9);
        CHECK(g.log_fraction ==
              doctest::Approx(-0.5 * static_cast<double>(n)).epsilon(1e-9));
        CHECK(g.half_angle > 0.0);
        CHECK(g.half_angle < M_PI);
    }
}

TEST_CASE("rate ln2/n opens the cone to a half space") {
    // cap fraction exactly 1/2 puts the half angle at pi/2 and the bound
    // collapses to the Gaussian tail of the mean shift
    for (std::size_t n : {10u, 100u, 1000u}) {
        const double rate = std::log(2.0) / static_cast<double>(n);
        const ConeGeometry g = cone_half_angle(n, rate);
        CHECK(g.half_angle == doctest::Approx(M_PI / 2.0).epsilon(1e-9));
        const double es = 1.0;
        const BoundResult r = sp59_bound(n, rate, es);
        const double want = log_norm_tail(std::sqrt(2.0 * static_cast<double>(n) * es));
        CHECK(std::fabs(r.log_pe - want) <= 1e-8 * std::fabs(want));
    }
}

TEST_CASE("bound responds monotonically to each argument") {
    const double r8 = 0.8 * std::log(2.0);
    // tighter with SNR
    CHECK(sp59_bound(500, r8, 1.2).log_pe > sp59_bound(500, r8, 1.5).log_pe);
    // higher rate is harder
    CHECK(sp59_bound(500, 0.7 * std::log(2.0), 1.41).log_pe <
          sp59_bound(500, 0.9 * std::log(2.0), 1.41).log_pe);
    // above threshold, longer blocks drive the probability down
    CHECK(sp59_bound(200, r8, 1.41).log_pe > sp59_bound(400, r8, 1.41).log_pe);
    CHECK(sp59_bound(400, r8, 1.41).log_pe > sp59_bound(800, r8, 1.41).log_pe);
}

TEST_CASE("frozen values across three orders of magnitude in dimension") {
    const double r8 = 0.8 * std::log(2.0);
    CHECK(sp59_bound(500, r8, 1.41).log_pe ==
          doctest::Approx(-11.415981).epsilon(1e-5));
    CHECK(sp59_bound(10000, r8, 1.41).log_pe ==
          doctest::Approx(-163.015712).epsilon(1e-5));
    CHECK(sp59_bound(2000000, 0.55 * std::log(2.0), 0.74).log_pe ==
          doctest::Approx(-13707.826079).epsilon(1e-5));
}

TEST_CASE("degenerate geometries are rejected") {
    CHECK_THROWS(cone_half_angle(1, 0.5));
    CHECK_THROWS(cone_half_angle(10, -0.1));
    CHECK_THROWS(sp59_bound(10, 14.0, 1.0));   // cone narrower than resolvable
    CHECK_THROWS(sp59_bound(100, 0.5, -1.0));  // negative SNR
}

TEST_CASE("escape probability matches Monte Carlo at low dimension") {
    // the bound equals P(U cot(theta) - G >= c) with U chi(n-1), G normal;
    // simulate it directly
    const std::size_t n = 10;
    const double rate = 0.5 * std::log(2.0);
    const double es = 1.1;
    const BoundResult r = sp59_bound(n, rate, es);
    const double p_bound = std::exp(r.log_pe);
    REQUIRE(p_bound > 1e-3);
    REQUIRE(p_bound < 0.5);

    const ConeGeometry g = cone_half_angle(n, rate);
    const double cot = std::cos(g.half_angle) / std::sin(g.half_angle);
    const double c = std::sqrt(2.0 * static_cast<double>(n) * es);
    std::mt19937_64 rng(2026);
    std::chi_squared_distribution<double> chi2(static_cast<double>(n - 1));
    std::normal_distribution<double> gauss(0.0, 1.0);
    const long samples = 2000000;
    long hits = 0;
    for (long i = 0; i < samples; ++i) {
        const double u = std::sqrt(chi2(rng));
        if (u * cot - gauss(rng) >= c) ++hits;
    }
    const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
    const double se = std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
    CHECK(std::fabs(p_hat - p_bound) <= 3.5 * se);
}
