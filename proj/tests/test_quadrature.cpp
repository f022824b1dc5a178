#include "famalab/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace famalab::quad;

TEST_SUITE("quadrature") {

TEST_CASE("gauss-legendre rules") {
    for (std::size_t n : {64u, 128u, 37u}) {
        const auto& r = gauss_legendre(n);
        REQUIRE(r.nodes.size() == n);
        double w = 0.0, x2 = 0.0, x10 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w += r.weights[i];
            x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
            x10 += r.weights[i] * std::pow(r.nodes[i], 10);
        }
        CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK(x10 == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
    }
    CHECK(&gauss_legendre(256) == &gauss_legendre(256));
}

TEST_CASE("adaptive gauss-kronrod") {
    auto r = gauss_kronrod([](double x) { return std::exp(-x); }, 0.0, 30.0, 1e-12, 0.0, 100);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(-std::expm1(-30.0)).epsilon(1e-12));
    auto peak = gauss_kronrod([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10, 0.0, 200);
    CHECK(peak.converged);
    CHECK(peak.value == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-9));
    auto capped = gauss_kronrod([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, 1e-14, 0.0, 3);
    CHECK_FALSE(capped.converged);
}

TEST_CASE("tail cutoff") {
    const double hi = tail_cutoff([](double x) { return -x * x; }, 0.0, 1e-14);
    CHECK(hi == doctest::Approx(std::sqrt(14.0 * std::log(10.0))).epsilon(1e-9));
}

}  // TEST_SUITE
