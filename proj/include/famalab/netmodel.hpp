#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace famalab {

/// Free parameters of the cell-free MRT/FAMA network. Defaults are the
/// baseline simulation settings (all distances 100, three interferers).
struct NetworkConfig {
    int n_bs_antennas = 2;      // N
    int n_interferers = 3;      // U
    int n_ports = 10;           // K
    double fas_size = 5.0;      // W, in wavelengths
    double path_loss_exp = 3.0; // alpha
    double sigma = 1.0;
    double sigma_s = 1.0;
    double sigma_eta = 1e-4;
    double sir_threshold_f = 1.0;
    double sir_threshold_s = 1.0;
    double snr_threshold = 316.22776601683796;  // 25 dB
    std::vector<double> distances{100.0, 100.0, 100.0, 100.0};  // [r0, r1, ..., rU]

    /// Throws ConfigError on the first violated invariant.
    void validate() const;
};

/// Quantities computed once from a NetworkConfig.
struct DerivedParams {
    double mu2 = 1.0;        // port correlation mu^2
    int omega = 1;           // desired Nakagami shape (= N)
    double iota = 0.0;       // desired Nakagami spread r0^-a N sigma^2
    double sigma_I2 = 0.0;   // f-FAMA interference Rayleigh power
    double Omega = 1.0;      // s-FAMA interference Nakagami shape
    double phi = 0.0;        // s-FAMA interference spread
    double theta_f = 0.0;
    double theta_s = 0.0;
    int a = 1;               // = omega
    double b = 1.0;          // = omega + Omega - 1
    double nu_scale = 0.0;   // Gamma scale phi / Omega
    int n_ports = 1;         // K
    double sigma_s = 1.0;
    double noise_tau = 0.0;  // sqrt(sigma_eta^2 gamma_snr / sigma_s^2)
};

/// mu^2 = |2/(K(K-1)) sum_{k=1}^{K-1} (K-k) J0(2 pi k W/(K-1))|, and 1 at K = 1.
double correlation_mu2(int n_ports, double fas_size);

/// Validates `cfg` and computes DerivedParams. `mu2_override` replaces the
/// J0-sum correlation (synthetic studies such as the independent-port limit).
DerivedParams derive(const NetworkConfig& cfg, std::optional<double> mu2_override = std::nullopt);

/// Nakagami density 2 m^m / (Gamma(m) s^m) x^{2m-1} exp(-m x^2 / s).
double nakagami_pdf(double x, double shape, double spread);

/// Gamma density with shape k and scale theta (mean k theta).
double gamma_pdf(double x, double shape, double scale);

struct NakagamiParams {
    double shape;
    double spread;
};

NakagamiParams desired_marginal(const DerivedParams& p);
NakagamiParams s_interf_marginal(const DerivedParams& p);
double f_interf_sigma2(const DerivedParams& p);

struct MagnitudeMoments {
    double mean;
    double variance;
};

/// Rayleigh moments of |g^I|: sigma_I sqrt(pi)/2 and sigma_I^2 (4 - pi)/4.
MagnitudeMoments f_interf_moments(const DerivedParams& p);

/// Moments of sigma_s |g^[s]| under the Nakagami(Omega, phi) model.
/// The variance is exact: sigma_s^2 phi - mean^2.
MagnitudeMoments s_interf_moments(const DerivedParams& p);

/// Closed-form approximation sigma_s^2 phi / (5 Omega) of the s-FAMA variance.
double s_interf_variance_approx(const DerivedParams& p);

/// E_f / E_s = (sqrt(pi)/2) Gamma(Omega) sqrt(Omega) / Gamma(Omega + 1/2).
double mean_ratio(double Omega);

/// Var_f / Var_s using the approximate s-FAMA variance: 5 Omega (4 - pi) / 4.
double variance_ratio_approx(double Omega);

/// Var_f / Var_s with the exact Nakagami variance.
double variance_ratio_exact(double Omega);

/// Interferer distances for a U-axis sweep. "equal" puts every interferer at
/// `spacing`; "linear" puts interferer i at serving + i * spacing.
std::vector<double> make_distances(int n_interferers, double serving, double spacing,
                                   const std::string& rule);

}  // namespace famalab
