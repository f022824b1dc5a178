#include "famalab/config_json.hpp"
#include "famalab/errors.hpp"
#include "famalab/netmodel.hpp"
#include "famalab/specfun.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace famalab;

TEST_SUITE("netmodel") {

TEST_CASE("port correlation") {
    CHECK(correlation_mu2(1, 5.0) == 1.0);
    CHECK(correlation_mu2(2, 5.0) == doctest::Approx(std::abs(specfun::bessel_j0(10.0 * std::numbers::pi))).epsilon(1e-12));
    // 40-digit summation of the nine J0 terms
    CHECK(correlation_mu2(2, 5.0) == doctest::Approx(0.10025099457300634).epsilon(1e-10));
    CHECK(correlation_mu2(10, 5.0) == doctest::Approx(0.044016540000188875).epsilon(1e-10));
    for (int K : {2, 3, 7, 16, 33, 64, 128, 257, 512}) {
        for (double W = 0.25; W <= 20.0; W += 0.75) {
            const double m = correlation_mu2(K, W);
            CHECK(m >= 0.0);
            CHECK(m <= 1.0);
        }
    }
}

TEST_CASE("derived parameters") {
    NetworkConfig cfg;
    cfg.n_bs_antennas = 2;
    cfg.distances = {100, 100, 100, 100};
    const auto p = derive(cfg);
    CHECK(p.iota == doctest::Approx(2e-6).epsilon(1e-12));
    CHECK(p.omega == 2);
    CHECK(p.a == 2);
    CHECK(p.Omega == 3.0);
    CHECK(p.phi == doctest::Approx(3e-6).epsilon(1e-12));
    CHECK(p.sigma_I2 == doctest::Approx(3e-6).epsilon(1e-12));
    CHECK(p.b == doctest::Approx(4.0));
    CHECK(p.nu_scale == doctest::Approx(1e-6).epsilon(1e-12));

    cfg.distances = {200, 400, 600, 800};
    const auto q = derive(cfg);
    double s1 = 0, s2 = 0;
    for (double r : {400.0, 600.0, 800.0}) {
        s1 += std::pow(r, -3.0);
        s2 += std::pow(r, -6.0);
    }
    CHECK(q.Omega == doctest::Approx(s1 * s1 / s2).epsilon(1e-14));
    CHECK(q.Omega == doctest::Approx(1.83).epsilon(0.01));

    cfg.sir_threshold_f = 4.0;
    cfg.sigma_s = 2.0;
    cfg.sir_threshold_s = 9.0;
    const auto t = derive(cfg);
    CHECK(t.theta_f == doctest::Approx(1.0));
    CHECK(t.theta_s == doctest::Approx(3.0));
    CHECK(derive(cfg, 0.25).mu2 == 0.25);
}

TEST_CASE("Omega range and equality on random distances") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(50.0, 1000.0);
    for (int i = 0; i < 200; ++i) {
        NetworkConfig cfg;
        cfg.n_interferers = 1 + i % 6;
        cfg.distances = {40.0};
        std::vector<double> r;
        for (int k = 0; k < cfg.n_interferers; ++k) r.push_back(u(gen));
        std::sort(r.begin(), r.end());
        cfg.distances.insert(cfg.distances.end(), r.begin(), r.end());
        const auto p = derive(cfg);
        CHECK(p.Omega >= 1.0 - 1e-12);
        CHECK(p.Omega <= cfg.n_interferers + 1e-12);
        if (cfg.n_interferers > 1) CHECK(p.Omega < cfg.n_interferers);
        cfg.distances.assign(cfg.n_interferers + 1, r.front());
        cfg.distances[0] = 40.0;
        CHECK(derive(cfg).Omega == cfg.n_interferers);
    }
}

TEST_CASE("densities") {
    for (double x : {0.1, 0.7, 1.3, 2.5}) {
        const double s2 = 1.7;
        CHECK(nakagami_pdf(x, 1.0, s2) == doctest::Approx(2 * x / s2 * std::exp(-x * x / s2)).epsilon(1e-13));
    }
    CHECK(nakagami_pdf(0.0, 1.5, 1.0) == 0.0);
    CHECK(nakagami_pdf(1.0, 2.0, 1.0) == doctest::Approx(8.0 * std::exp(-2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(nakagami_pdf(1.0, 0.4, 1.0), DomainError);
    for (double m : {0.5, 1.0, 2.0, 3.7}) {
        const double total = static_cast<double>(
            oracle::simpson([m](long double x) { return nakagami_pdf(static_cast<double>(x), m, 2.0); }, 0.0L, 12.0L, 20000));
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
        if (m < 1.0) continue;  // sqrt cusp at the origin slows Simpson down
        const double gtotal = static_cast<double>(
            oracle::simpson([m](long double x) { return gamma_pdf(static_cast<double>(x), m + 1.0, 0.5); }, 0.0L, 40.0L, 40000));
        CHECK(gtotal == doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK(gamma_pdf(2.0, 3.0, 0.5) == doctest::Approx(4.0 * std::exp(-4.0) / (2.0 * 0.125)).epsilon(1e-13));
}

TEST_CASE("marginals") {
    NetworkConfig cfg;
    cfg.n_bs_antennas = 2;
    CHECK(desired_marginal(derive(cfg)).shape == 2.0);
    cfg.n_interferers = 1;
    cfg.distances = {100, 150};
    const auto p = derive(cfg);
    CHECK(s_interf_marginal(p).shape == 1.0);
    CHECK(s_interf_marginal(p).spread == doctest::Approx(f_interf_sigma2(p)));
    cfg.n_interferers = 3;
    cfg.distances = {100, 100, 100, 100};
    const auto e = derive(cfg);
    CHECK(s_interf_marginal(e).shape == 3.0);
    CHECK(s_interf_marginal(e).spread == doctest::Approx(3e-6).epsilon(1e-12));
}

TEST_CASE("moment formulas") {
    NetworkConfig cfg;
    const auto p = derive(cfg);
    const auto f = f_interf_moments(p);
    CHECK(f.mean == doctest::Approx(std::sqrt(p.sigma_I2 * std::numbers::pi) / 2.0));
    CHECK(f.variance == doctest::Approx(p.sigma_I2 * (4.0 - std::numbers::pi) / 4.0));
    const auto s = s_interf_moments(p);
    CHECK(s.mean == doctest::Approx(specfun::gamma_fn(3.5) / specfun::gamma_fn(3.0) * std::sqrt(p.phi / 3.0)));
    CHECK(mean_ratio(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    for (double om = 1.1; om < 30.0; om += 0.7) CHECK(mean_ratio(om) < 1.0);
    CHECK(variance_ratio_approx(p.Omega) == doctest::Approx(f.variance / s_interf_variance_approx(p)).epsilon(1e-12));
    CHECK(variance_ratio_approx(2.0) == doctest::Approx(10.0 * (4.0 - std::numbers::pi) / 4.0));
    CHECK(variance_ratio_exact(1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("config validation and JSON") {
    NetworkConfig cfg;
    cfg.distances = {100, 300, 200, 400};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.distances = {100, 200};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = NetworkConfig{};
    cfg.n_ports = 0;
    CHECK_THROWS_AS(derive(cfg), ConfigError);

    NetworkConfig c2;
    c2.n_ports = 12;
    c2.distances = {200, 400, 600, 800};
    const auto j = config_to_json(c2);
    const auto back = config_from_json(j);
    CHECK(back.n_ports == 12);
    CHECK(back.distances == c2.distances);
    CHECK(config_from_json(nlohmann::json::object()).n_bs_antennas == 2);
    CHECK_THROWS_AS(config_from_json({{"n_port", 3}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"n_ports", 2.5}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"fas_size", "big"}}), ConfigError);
}

TEST_CASE("distance rules") {
    CHECK(make_distances(3, 200, 200, "linear") == std::vector<double>{200, 400, 600, 800});
    CHECK(make_distances(2, 100, 150, "equal") == std::vector<double>{100, 150, 150});
    CHECK_THROWS_AS(make_distances(2, 100, 150, "random"), ConfigError);
}

}  // TEST_SUITE
