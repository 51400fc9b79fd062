#include <cmath>
#include <vector>

#include "doctest.h"
#include "spb/quadrature.hpp"

using namespace spb;

namespace {

double poly_integral(const std::vector<double>& x, const std::vector<double>& w,
                     int power) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], power);
    return s;
}

}  // namespace

TEST_CASE("Gauss-Legendre weights sum to the interval length") {
    for (int n : {2, 8, 33, 96, 257}) {
        std::vector<double> x, w;
        gauss_legendre(n, x, w);
        REQUIRE(x.size() == static_cast<std::size_t>(n));
        REQUIRE(w.size() == static_cast<std::size_t>(n));
        double s = 0.0;
        for (double wi : w) s += wi;
        CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
        // nodes strictly increasing inside (-1, 1)
        for (int i = 0; i + 1 < n; ++i) CHECK(x[i] < x[i + 1]);
        CHECK(x.front() > -1.0);
        CHECK(x.back() < 1.0);
        // symmetry
        for (int i = 0; i < n; ++i) {
            CHECK(x[i] == doctest::Approx(-x[n - 1 - i]).epsilon(1e-13));
            CHECK(w[i] == doctest::Approx(w[n - 1 - i]).epsilon(1e-13));
        }
    }
}

TEST_CASE("n-point rule is exact through degree 2n-1") {
    std::vector<double> x, w;
    gauss_legendre(8, x, w);
    for (int p = 0; p <= 15; ++p) {
        const double want = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
        CHECK(poly_integral(x, w, p) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("box grid normalizes a Gaussian in one dimension") {
    const double sigma = 0.4;
    QuadratureGrid g = make_box_grid(1, 8.0 * sigma, 96);
    REQUIRE(g.dim == 1);
    REQUIRE(g.points == 96);
    double total = 0.0;
    const double ln_norm = -0.5 * std::log(2.0 * M_PI * sigma * sigma);
    for (std::size_t i = 0; i < g.points; ++i) {
        const double t = g.nodes[i];
        total += std::exp(g.log_weights[i] + ln_norm -
                          t * t / (2.0 * sigma * sigma));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("box grid normalizes a Gaussian in two dimensions") {
    const double sigma = 0.5;
    QuadratureGrid g = make_box_grid(2, 8.0 * sigma, 48);
    REQUIRE(g.dim == 2);
    REQUIRE(g.points == 48u * 48u);
    REQUIRE(g.nodes.size() == 2 * g.points);
    double total = 0.0;
    const double ln_norm = -std::log(2.0 * M_PI * sigma * sigma);
    for (std::size_t i = 0; i < g.points; ++i) {
        const double a = g.nodes[2 * i], b = g.nodes[2 * i + 1];
        total += std::exp(g.log_weights[i] + ln_norm -
                          (a * a + b * b) / (2.0 * sigma * sigma));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("doubling the node count moves a Gaussian moment less than the certified tolerance") {
    const double sigma = 0.7, half = 8.0 * sigma;
    auto moment = [&](int n) {
        QuadratureGrid g = make_box_grid(1, half, n);
        double total = 0.0;
        const double ln_norm = -0.5 * std::log(2.0 * M_PI * sigma * sigma);
        for (std::size_t i = 0; i < g.points; ++i) {
            const double t = g.nodes[i];
            total += std::exp(g.log_weights[i] + ln_norm -
                              t * t / (2.0 * sigma * sigma)) *
                     std::cos(t);
        }
        return total;
    };
    QuadratureGrid g = make_box_grid(1, half, 96);
    const double coarse = moment(96), fine = moment(192);
    CHECK(std::fabs(coarse - fine) <= g.certified_tol * std::fabs(fine));
    // analytic value of E[cos X] for X ~ N(0, sigma^2)
    CHECK(fine == doctest::Approx(std::exp(-0.5 * sigma * sigma)).epsilon(1e-12));
}
