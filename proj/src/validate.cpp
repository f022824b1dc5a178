#include "famalab/validate.hpp"

#include "famalab/analytic.hpp"
#include "famalab/montecarlo.hpp"
#include "famalab/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace famalab {

namespace {

CheckResult abs_check(std::string group, std::string name, double measured, double expected,
                      double tol, std::string detail = {}) {
    CheckResult c{std::move(group), std::move(name), false, measured, expected, tol, std::move(detail)};
    c.passed = std::abs(measured - expected) <= tol;
    return c;
}

CheckResult rel_check(std::string group, std::string name, double measured, double expected,
                      double rel, std::string detail = {}) {
    CheckResult c = abs_check(std::move(group), std::move(name), measured, expected,
                              rel * std::abs(expected), std::move(detail));
    return c;
}

CheckResult max_check(std::string group, std::string name, double worst, double tol,
                      std::string detail = {}) {
    CheckResult c{std::move(group), std::move(name), worst <= tol, worst, 0.0, tol, std::move(detail)};
    return c;
}

bool equal_interferers(const NetworkConfig& cfg) {
    return std::all_of(cfg.distances.begin() + 1, cfg.distances.end(),
                       [&](double r) { return r == cfg.distances[1]; });
}

}  // namespace

bool ValidationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json ValidationReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"group", c.group},
                       {"name", c.name},
                       {"passed", c.passed},
                       {"measured", c.measured},
                       {"expected", c.expected},
                       {"tolerance", c.tolerance},
                       {"detail", c.detail}});
    }
    return {{"all_passed", all_passed()}, {"checks", arr}};
}

std::vector<CheckResult> check_specfun_identities() {
    using namespace specfun;
    std::vector<CheckResult> out;
    const std::vector<double> grid{0.0, 0.3, 1.0, 2.5, 5.0, 9.0};

    double worst = 0.0;
    for (int w = 1; w <= 6; ++w) {
        for (double a : grid) {
            for (double b : grid) {
                const double lhs = 1.0 - marcum_q(w, a, b);
                const double rhs = marcum_q(1 - w, b, a);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
    }
    out.push_back(max_check("specfun", "marcum complement identity", worst, 1e-9));

    worst = 0.0;
    for (int n = -20; n <= 20; ++n) {
        for (double z : {0.0, 0.1, 1.0, 3.0, 7.5, 15.0, 30.0, 50.0}) {
            const double ang = angular_bessel_product({n, z, 0.0});
            const double ref = bessel_i_scaled(n, z);
            worst = std::max(worst, std::abs(ang - ref) / std::max(1.0, ref * std::exp(z)));
        }
    }
    out.push_back(max_check("specfun", "angular form equals scaled Bessel", worst, 1e-8));

    worst = 0.0;
    for (int a = 1; a <= 8; ++a) {
        for (double x : {0.01, 0.5, 1.0, 3.0, 8.0, 20.0}) {
            worst = std::max(worst, std::abs(reg_lower_gamma(a, x) -
                                             (1.0 - marcum_q(a, 0.0, std::sqrt(2.0 * x)))));
        }
    }
    out.push_back(max_check("specfun", "incomplete gamma equals central Marcum", worst, 1e-9));

    int violations = 0;
    for (double nu : {0.5, 1.0, 1.83, 3.0}) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
                if (marcum_q(nu, grid[i], grid[j + 1]) > marcum_q(nu, grid[i], grid[j]) + 1e-14) ++violations;
                if (marcum_q(nu, grid[j + 1], grid[i]) + 1e-14 < marcum_q(nu, grid[j], grid[i])) ++violations;
            }
        }
    }
    out.push_back(max_check("specfun", "marcum monotone in a and b", violations, 0.0));
    return out;
}

std::vector<CheckResult> check_netmodel(const NetworkConfig& cfg, const std::optional<double>& mu2) {
    std::vector<CheckResult> out;
    double worst = 0.0;
    for (int K : {2, 3, 4, 5, 8, 10, 16, 20, 32, 60, 100, 200, 512}) {
        for (double W : {0.1, 0.5, 1.0, 2.0, 3.3, 5.0, 10.0, 20.0}) {
            const double m = correlation_mu2(K, W);
            worst = std::max(worst, m < 0.0 ? -m : (m > 1.0 ? m - 1.0 : 0.0));
        }
    }
    out.push_back(max_check("netmodel", "mu2 within [0, 1]", worst, 0.0));

    const DerivedParams p = derive(cfg, mu2);
    const double U = cfg.n_interferers;
    const bool in_range = p.Omega >= 1.0 - 1e-12 && p.Omega <= U + 1e-12;
    out.push_back({"netmodel", "Omega within [1, U]", in_range, p.Omega, U, 0.0, ""});
    const bool eq = equal_interferers(cfg);
    const bool at_u = std::abs(p.Omega - U) <= 1e-9 * U;
    out.push_back({"netmodel", "Omega = U iff equal distances", eq == at_u, p.Omega, U, 1e-9 * U,
                   eq ? "equal distances" : "unequal distances"});
    out.push_back(abs_check("netmodel", "mean ratio at Omega = 1", mean_ratio(1.0), 1.0, 1e-12));
    out.push_back(abs_check("netmodel", "variance ratio identity", variance_ratio_approx(p.Omega),
                            f_interf_moments(p).variance / s_interf_variance_approx(p), 1e-9));
    return out;
}

std::vector<CheckResult> check_distributions(const NetworkConfig& cfg, const ValidateOptions& opts) {
    std::vector<CheckResult> out;
    const DerivedParams p = derive(cfg, opts.mu2_override);
    const bool equal = equal_interferers(cfg);

    const auto d = empirical_distribution(cfg, p, opts.trials, opts.seed, Quantity::Desired, 100, 0.0, opts.jobs);
    const double scale = std::pow(cfg.distances[0], -cfg.path_loss_exp) * cfg.sigma * cfg.sigma;
    const double N = cfg.n_bs_antennas;
    out.push_back(rel_check("channel", "desired power mean (Gamma)", d.mean_sq, N * scale, 0.01));
    out.push_back(rel_check("channel", "desired power second moment (Gamma)",
                            d.variance_sq + d.mean_sq * d.mean_sq, N * (N + 1) * scale * scale, 0.01));
    const double nak_mean =
        std::exp(specfun::log_gamma(N + 0.5) - specfun::log_gamma(N)) * std::sqrt(p.iota / N);
    out.push_back(rel_check("channel", "desired magnitude mean (Nakagami)", d.mean, nak_mean, 0.01));
    out.push_back(rel_check("channel", "desired magnitude variance (Nakagami)", d.variance,
                            p.iota - nak_mean * nak_mean, 0.01));
    out.push_back(abs_check("channel", "desired port correlation", d.port_correlation, p.mu2, 0.02));

    const auto f = empirical_distribution(cfg, p, opts.trials, opts.seed + 1, Quantity::FInterf, 100, 0.0, opts.jobs);
    const auto fm = f_interf_moments(p);
    out.push_back(rel_check("channel", "f-interference mean (Rayleigh)", f.mean, fm.mean, 0.01));
    out.push_back(rel_check("channel", "f-interference variance (Rayleigh)", f.variance, fm.variance, 0.01));
    out.push_back(abs_check("channel", "f-interference port correlation", f.port_correlation, p.mu2, 0.02));

    const auto s = empirical_distribution(cfg, p, opts.trials, opts.seed + 2, Quantity::SInterf, 100, 0.0, opts.jobs);
    const double ss2 = cfg.sigma_s * cfg.sigma_s;
    const double nu = p.nu_scale * ss2;
    const double tol = equal ? 0.01 : 0.02;
    out.push_back(rel_check("channel", "s-interference power mean (Gamma)", s.mean_sq, p.Omega * nu, tol));
    out.push_back(rel_check("channel", "s-interference power second moment (Gamma)",
                            s.variance_sq + s.mean_sq * s.mean_sq, p.Omega * (p.Omega + 1.0) * nu * nu, tol));
    const auto sm = s_interf_moments(p);
    out.push_back(rel_check("channel", "s-interference magnitude mean", s.mean, sm.mean, tol));
    if (equal) {
        out.push_back(rel_check("channel", "s-interference magnitude variance", s.variance, sm.variance, 0.01));
    }
    out.push_back(abs_check("channel", "s-interference port correlation", s.port_correlation, p.mu2, 0.02));
    return out;
}

std::vector<CheckResult> check_outage(const NetworkConfig& cfg, const ValidateOptions& opts) {
    std::vector<CheckResult> out;
    const DerivedParams p = derive(cfg, opts.mu2_override);
    const bool single = p.mu2 >= 1.0;
    QuadratureSettings q;
    q.jobs = opts.jobs;

    auto compare = [&](const std::string& name, Scheme scheme, double analytic, double floor) {
        McOptions mo{opts.trials, opts.seed + 10 + static_cast<std::uint64_t>(scheme), opts.jobs};
        double g = scheme == Scheme::FFama   ? cfg.sir_threshold_f
                   : scheme == Scheme::SFama ? cfg.sir_threshold_s
                                             : cfg.snr_threshold;
        const double gv[1] = {g};
        const auto est = outage_curve_mc(cfg, p, scheme, gv, mo).front();
        const double tol = std::max(3.0 * est.std_error, floor);
        out.push_back(abs_check("outage", name, est.probability, analytic, tol,
                                "MC " + std::to_string(est.trials) + " trials"));
    };

    if (single) {
        compare("f-FAMA single port closed form vs MC", Scheme::FFama, outage_f_fama_k1(p, q).probability, 0.005);
        compare("s-FAMA single port closed form vs MC", Scheme::SFama, outage_s_fama_k1(p, q).probability, 0.005);
        compare("noise-limited single port closed form vs MC", Scheme::NoiseLimited, outage_snr_k1(p), 0.005);
        return out;
    }
    const auto fa = outage_f_fama(p, q);
    out.push_back({"outage", "f-FAMA bracket within [0, 1]",
                   fa.bracket_min >= -1e-8 && fa.bracket_max <= 1.0 + 1e-8, fa.bracket_min, fa.bracket_max,
                   1e-8, "min/max over quadrature nodes"});
    compare("f-FAMA analytic vs MC", Scheme::FFama, fa.probability, 0.005);
    if (std::abs(p.Omega - std::round(p.Omega)) <= 1e-9) {
        const auto sa = outage_s_fama(p, q);
        out.push_back({"outage", "s-FAMA bracket within [0, 1]",
                       sa.bracket_min >= -1e-8 && sa.bracket_max <= 1.0 + 1e-8, sa.bracket_min,
                       sa.bracket_max, 1e-8, "min/max over quadrature nodes"});
        compare("s-FAMA analytic vs MC", Scheme::SFama, sa.probability, equal_interferers(cfg) ? 0.005 : 0.01);
    }
    compare("noise-limited analytic vs MC", Scheme::NoiseLimited, outage_snr(p, q).probability, 0.005);
    {
        // A single port has the Nakagami marginal for any correlation, so
        // the K-port integral at K = 1 must reproduce the closed form.
        NetworkConfig c1 = cfg;
        c1.n_ports = 1;
        const DerivedParams p1 = derive(c1, 0.5);
        QuadratureSettings tight = q;
        tight.rel_tol = 1e-11;
        tight.abs_tol = 1e-14;
        out.push_back(abs_check("outage", "noise-limited integral at K = 1 vs closed form",
                                outage_snr(p1, tight).probability, outage_snr_k1(p1), 1e-8));
    }
    return out;
}

ValidationReport validate(const NetworkConfig& cfg, const ValidateOptions& opts) {
    ValidationReport r;
    auto add = [&](std::vector<CheckResult> v) {
        r.checks.insert(r.checks.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
    };
    if (opts.include_identities) add(check_specfun_identities());
    add(check_netmodel(cfg, opts.mu2_override));
    if (opts.include_distributions) add(check_distributions(cfg, opts));
    if (opts.include_outage) add(check_outage(cfg, opts));
    return r;
}

}  // namespace famalab
