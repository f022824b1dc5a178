#include "famalab/errors.hpp"
#include "famalab/specfun.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace famalab;
using namespace famalab::specfun;

TEST_SUITE("specfun") {

TEST_CASE("gamma function") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_fn(170.0) == doctest::Approx(std::exp(log_gamma(170.0))).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(172.0), OverflowError);
}

TEST_CASE("pochhammer") {
    CHECK(pochhammer(3.0, 0) == 1.0);
    CHECK(pochhammer(3.0, 2) == 12.0);
    CHECK(pochhammer(-1.0, 3) == 0.0);
    CHECK(pochhammer(0.5, 3) == doctest::Approx(0.5 * 1.5 * 2.5));
}

TEST_CASE("regularized incomplete gamma") {
    for (double x : {0.0, 0.1, 1.0, 3.7, 25.0}) {
        CHECK(reg_lower_gamma(1.0, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-14));
    }
    CHECK(reg_lower_gamma(3.5, 0.0) == 0.0);
    const double oracle = static_cast<double>(oracle::lower_gamma_integral(2, 2.0L));
    CHECK(std::abs(oracle - 0.59399415029016167) < 1e-12);
    CHECK(std::abs(reg_lower_gamma(2.0, 2.0) - 0.59399415029016167) < 1e-14);
    for (int a : {1, 3, 7, 15}) {
        for (double x : {0.5, 2.0, 9.0, 30.0}) {
            const double o = static_cast<double>(oracle::lower_gamma_integral(a, x));
            CHECK(reg_lower_gamma(a, x) == doctest::Approx(o).epsilon(1e-10));
            CHECK(reg_lower_gamma(a, x) + reg_upper_gamma(a, x) == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
    double prev = 0.0;
    for (double x = 0.0; x < 40.0; x += 0.25) {
        const double v = reg_lower_gamma(6.3, x);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(reg_lower_gamma(6.3, 200.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(reg_lower_gamma(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(reg_lower_gamma(1.0, -1.0), DomainError);
}

TEST_CASE("bessel j0") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-10);
    const double oracle = static_cast<double>(oracle::j0_series(10.0L));
    CHECK(std::abs(oracle - (-0.2459357644513483)) < 1e-12);
    CHECK(bessel_j0(10.0) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(bessel_j0(-3.0) == doctest::Approx(bessel_j0(3.0)));
    // mpmath at 40 digits
    CHECK(bessel_j0(10.0 * std::numbers::pi) == doctest::Approx(0.10025099457300634).epsilon(1e-10));
}

TEST_CASE("modified bessel i") {
    CHECK(bessel_i(0, 0.0) == 1.0);
    CHECK(bessel_i(1, 0.0) == 0.0);
    const double oracle = static_cast<double>(oracle::besseli_series(0, 1.0L));
    CHECK(std::abs(oracle - 1.2660658777520082) < 1e-14);
    CHECK(bessel_i(0, 1.0) == doctest::Approx(oracle).epsilon(1e-14));
    for (int n : {0, 1, 2, 5, 12, 25}) {
        for (double x : {0.3, 2.0, 10.0, 29.0, 31.0, 45.0, 80.0}) {
            const long double ref = oracle::besseli_series(n, x) * std::exp(-static_cast<long double>(x));
            CHECK(bessel_i_scaled(n, x) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
            CHECK(bessel_i_scaled(-n, x) == bessel_i_scaled(n, x));
        }
    }
    CHECK(std::isfinite(bessel_i_scaled(3, 1e6)));
    CHECK(bessel_i_scaled(0, 1e6) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi * 1e6)).epsilon(1e-6));
    CHECK_THROWS_AS(bessel_i(0, 800.0), OverflowError);
    CHECK_THROWS_AS(bessel_i(0, -1.0), DomainError);
}

TEST_CASE("marcum q examples") {
    for (double b : {0.0, 0.5, 1.0, 3.0, 6.0}) {
        CHECK(marcum_q(1.0, 0.0, b) == doctest::Approx(std::exp(-b * b / 2.0)).epsilon(1e-13));
    }
    for (double nu : {0.5, 1.0, 2.7, 6.0}) {
        for (double a : {0.0, 1.0, 10.0}) CHECK(marcum_q(nu, a, 0.0) == 1.0);
    }
    const double oracle = static_cast<double>(oracle::marcum_integral(2, 1.0L, 2.0L));
    CHECK(std::abs(oracle - 0.53014690808396572) < 1e-12);
    CHECK(marcum_q(2.0, 1.0, 2.0) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("marcum q against defining integral") {
    for (int nu : {1, 2, 4, 7}) {
        for (double a : {0.0, 0.4, 2.0, 5.5}) {
            for (double b : {0.2, 1.5, 4.0, 7.0}) {
                const double o = static_cast<double>(oracle::marcum_integral(nu, a, b));
                CHECK(marcum_q(nu, a, b) == doctest::Approx(o).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("marcum q domain and accuracy failures") {
    CHECK_THROWS_AS(marcum_q(-0.5, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(marcum_q(1.0, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(marcum_q(1.0, 1e5, 1e5), NumericalError);
}

TEST_CASE("marcum complement identity") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 12.0);
    for (int i = 0; i < 400; ++i) {
        const int w = 1 + static_cast<int>(i % 8);
        const double a = u(gen), b = u(gen);
        CHECK(std::abs((1.0 - marcum_q(w, a, b)) - marcum_q(1 - w, b, a)) <= 1e-9);
        CHECK(marcum_q_complement(w, a, b) == doctest::Approx(1.0 - marcum_q(w, a, b)).epsilon(1e-12));
    }
}

TEST_CASE("incomplete gamma is the central marcum q") {
    for (int a = 1; a <= 10; ++a) {
        for (double x : {0.01, 0.3, 1.0, 4.0, 11.0, 30.0}) {
            CHECK(std::abs(reg_lower_gamma(a, x) - (1.0 - marcum_q(a, 0.0, std::sqrt(2.0 * x)))) <= 1e-9);
        }
    }
}

TEST_CASE("marcum q monotone") {
    const double grid[] = {0.0, 0.2, 0.7, 1.5, 3.0, 5.0, 8.0, 12.0};
    for (double nu : {0.5, 1.0, 1.83, 3.0, 9.0}) {
        for (double x : grid) {
            for (int j = 0; j + 1 < 8; ++j) {
                CHECK(marcum_q(nu, x, grid[j + 1]) <= marcum_q(nu, x, grid[j]) + 1e-15);
                CHECK(marcum_q(nu, grid[j + 1], x) + 1e-15 >= marcum_q(nu, grid[j], x));
            }
        }
    }
}

TEST_CASE("angular bessel product") {
    CHECK(angular_bessel_product({0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(angular_bessel_product({3, 0.0, 0.0})) < 1e-15);
    CHECK(angular_bessel_product({2, 5.0, 0.0}) ==
          doctest::Approx(std::exp(-5.0) * static_cast<double>(oracle::besseli_series(2, 5.0L))).epsilon(1e-10));
    CHECK(damped_angular_bessel_product({2, 5.0, 1.5}) ==
          doctest::Approx(std::exp(-1.5) * bessel_i_scaled(2, 5.0)).epsilon(1e-10));
    for (int n = -20; n <= 20; ++n) {
        for (double z : {0.0, 0.01, 0.5, 2.0, 9.0, 20.0, 37.0, 50.0}) {
            const double v = angular_bessel_product({n, z, 0.0});
            CHECK(v >= -1.0 - 1e-14);
            CHECK(v <= 1.0 + 1e-14);
            const double i_n = bessel_i_scaled(n, z) * std::exp(z);
            CHECK(std::abs(v - bessel_i_scaled(n, z)) <= 1e-8 * std::max(1.0, i_n));
        }
    }
    std::vector<double> batch(7);
    angular_bessel_products(-3, 4.2, batch);
    for (int j = 0; j < 7; ++j) CHECK(batch[j] == doctest::Approx(bessel_i_scaled(j - 3, 4.2)).epsilon(1e-10));
    CHECK_THROWS_AS(angular_bessel_product({0, -1.0, 0.0}), DomainError);
}

}  // TEST_SUITE
