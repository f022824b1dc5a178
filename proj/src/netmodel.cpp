#include "famalab/netmodel.hpp"

#include "famalab/errors.hpp"
#include "famalab/specfun.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace famalab {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void NetworkConfig::validate() const {
    require(n_bs_antennas >= 1, "n_bs_antennas must be >= 1");
    require(n_interferers >= 1, "n_interferers must be >= 1");
    require(n_ports >= 1, "n_ports must be >= 1");
    require(positive_finite(fas_size), "fas_size must be positive");
    require(positive_finite(path_loss_exp), "path_loss_exp must be positive");
    require(positive_finite(sigma), "sigma must be positive");
    require(positive_finite(sigma_s), "sigma_s must be positive");
    require(std::isfinite(sigma_eta) && sigma_eta >= 0.0, "sigma_eta must be >= 0");
    require(positive_finite(sir_threshold_f), "sir_threshold_f must be positive");
    require(positive_finite(sir_threshold_s), "sir_threshold_s must be positive");
    require(positive_finite(snr_threshold), "snr_threshold must be positive");
    require(distances.size() == static_cast<std::size_t>(n_interferers) + 1,
            "distances must hold n_interferers + 1 entries (serving first), got " +
                std::to_string(distances.size()));
    for (double r : distances) require(positive_finite(r), "distances must be positive");
    require(std::is_sorted(distances.begin(), distances.end()),
            "distances must be sorted in nondecreasing order");
}

double correlation_mu2(int n_ports, double fas_size) {
    if (n_ports < 1) throw DomainError("correlation_mu2 requires K >= 1");
    if (n_ports == 1) return 1.0;
    const double k_total = n_ports;
    double sum = 0.0;
    for (int k = 1; k < n_ports; ++k) {
        sum += (k_total - k) *
               specfun::bessel_j0(2.0 * std::numbers::pi * k * fas_size / (k_total - 1.0));
    }
    return std::min(1.0, std::abs(2.0 / (k_total * (k_total - 1.0)) * sum));
}

DerivedParams derive(const NetworkConfig& cfg, std::optional<double> mu2_override) {
    cfg.validate();
    DerivedParams p;
    if (mu2_override) {
        require(*mu2_override >= 0.0 && *mu2_override <= 1.0, "mu2 override must lie in [0, 1]");
        p.mu2 = *mu2_override;
    } else {
        p.mu2 = correlation_mu2(cfg.n_ports, cfg.fas_size);
    }
    const double a = cfg.path_loss_exp;
    const double s2 = cfg.sigma * cfg.sigma;
    double sum1 = 0.0;
    double sum2 = 0.0;
    for (int i = 1; i <= cfg.n_interferers; ++i) {
        const double g = std::pow(cfg.distances[i], -a);
        sum1 += g;
        sum2 += g * g;
    }
    p.omega = cfg.n_bs_antennas;
    p.a = p.omega;
    p.iota = std::pow(cfg.distances[0], -a) * cfg.n_bs_antennas * s2;
    p.sigma_I2 = s2 * cfg.sigma_s * cfg.sigma_s * sum1;
    p.Omega = sum1 * sum1 / sum2;
    // Equal distances give U up to rounding; snap so integrality checks see it.
    if (std::abs(p.Omega - std::round(p.Omega)) < 1e-12 * p.Omega) p.Omega = std::round(p.Omega);
    p.phi = s2 * sum1;
    p.theta_f = std::sqrt(cfg.sir_threshold_f / (cfg.sigma_s * cfg.sigma_s));
    p.theta_s = std::sqrt(cfg.sir_threshold_s);
    p.b = p.omega + p.Omega - 1.0;
    p.nu_scale = p.phi / p.Omega;
    p.n_ports = cfg.n_ports;
    p.sigma_s = cfg.sigma_s;
    p.noise_tau = std::sqrt(cfg.sigma_eta * cfg.sigma_eta * cfg.snr_threshold /
                            (cfg.sigma_s * cfg.sigma_s));
    return p;
}

double nakagami_pdf(double x, double shape, double spread) {
    if (!(shape >= 0.5)) throw DomainError("nakagami_pdf requires shape >= 0.5");
    if (!(spread > 0.0)) throw DomainError("nakagami_pdf requires spread > 0");
    if (x < 0.0) return 0.0;
    if (x == 0.0) return shape == 0.5 ? std::sqrt(2.0 / (std::numbers::pi * spread)) : 0.0;
    const double log_pdf = std::log(2.0) + shape * std::log(shape / spread) -
                           specfun::log_gamma(shape) + (2.0 * shape - 1.0) * std::log(x) -
                           shape * x * x / spread;
    return std::exp(log_pdf);
}

double gamma_pdf(double x, double shape, double scale) {
    if (!(shape > 0.0)) throw DomainError("gamma_pdf requires shape > 0");
    if (!(scale > 0.0)) throw DomainError("gamma_pdf requires scale > 0");
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (shape < 1.0) return std::numeric_limits<double>::infinity();
        return shape == 1.0 ? 1.0 / scale : 0.0;
    }
    return std::exp((shape - 1.0) * std::log(x) - x / scale - specfun::log_gamma(shape) -
                    shape * std::log(scale));
}

NakagamiParams desired_marginal(const DerivedParams& p) { return {double(p.omega), p.iota}; }

NakagamiParams s_interf_marginal(const DerivedParams& p) { return {p.Omega, p.phi}; }

double f_interf_sigma2(const DerivedParams& p) { return p.sigma_I2; }

MagnitudeMoments f_interf_moments(const DerivedParams& p) {
    const double s = std::sqrt(p.sigma_I2);
    return {s * std::sqrt(std::numbers::pi) / 2.0, p.sigma_I2 * (4.0 - std::numbers::pi) / 4.0};
}

MagnitudeMoments s_interf_moments(const DerivedParams& p) {
    const double ratio =
        std::exp(specfun::log_gamma(p.Omega + 0.5) - specfun::log_gamma(p.Omega));
    const double mean = p.sigma_s * ratio * std::sqrt(p.phi / p.Omega);
    return {mean, p.sigma_s * p.sigma_s * p.phi - mean * mean};
}

double s_interf_variance_approx(const DerivedParams& p) {
    return p.sigma_s * p.sigma_s * p.phi / (5.0 * p.Omega);
}

double mean_ratio(double Omega) {
    if (!(Omega > 0.0)) throw DomainError("mean_ratio requires Omega > 0");
    return std::sqrt(std::numbers::pi) / 2.0 * std::sqrt(Omega) *
           std::exp(specfun::log_gamma(Omega) - specfun::log_gamma(Omega + 0.5));
}

double variance_ratio_approx(double Omega) {
    if (!(Omega > 0.0)) throw DomainError("variance_ratio_approx requires Omega > 0");
    return 5.0 * Omega * (4.0 - std::numbers::pi) / 4.0;
}

double variance_ratio_exact(double Omega) {
    if (!(Omega > 0.0)) throw DomainError("variance_ratio_exact requires Omega > 0");
    // Both variances in units of the common power sigma_s^2 phi = sigma_I^2.
    const double g = std::exp(specfun::log_gamma(Omega + 0.5) - specfun::log_gamma(Omega));
    const double var_s = 1.0 - g * g / Omega;
    return (4.0 - std::numbers::pi) / 4.0 / var_s;
}

std::vector<double> make_distances(int n_interferers, double serving, double spacing,
                                   const std::string& rule) {
    if (n_interferers < 1) throw ConfigError("n_interferers must be >= 1");
    std::vector<double> r{serving};
    for (int i = 1; i <= n_interferers; ++i) {
        if (rule == "equal") {
            r.push_back(spacing);
        } else if (rule == "linear") {
            r.push_back(serving + i * spacing);
        } else {
            throw ConfigError("unknown distance rule '" + rule + "' (expected equal or linear)");
        }
    }
    return r;
}

}  // namespace famalab
