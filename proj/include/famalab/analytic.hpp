#pragma once

#include "famalab/netmodel.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace famalab {

/// How the e^{-(A^2+B^2)/2} I_n(AB) factors inside the outage brackets are
/// evaluated: the angular integral, the scaled series/asymptotic Bessel, or
/// the plain unscaled Bessel (overflows for AB > ~709; reference only).
enum class BesselKernel { Angular, ScaledBessel, UnscaledBessel };

struct QuadratureSettings {
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    double envelope_cut = 1e-14;  // semi-infinite tails cut where the weight drops below this
    int max_subdivisions = 200;   // per panel
    int panels = 8;               // fixed outer panels, summed in order
    int jobs = 1;                 // threads used for outer panels
    BesselKernel kernel = BesselKernel::Angular;
};

struct AnalyticResult {
    double probability = 0.0;
    double error = 0.0;  // summed Gauss-Kronrod error estimate of the outer integral
    /// Range of the inner bracket before clamping, over all nodes visited.
    double bracket_min = std::numeric_limits<double>::infinity();
    double bracket_max = -std::numeric_limits<double>::infinity();
    long evaluations = 0;
    std::vector<std::string> warnings;
};

/// Conditional per-port outage probability in normalized coordinates:
/// x is the desired anchor over sqrt(iota/omega), y the interference anchor
/// over its RMS. `m` is the interference shape (1 for f-FAMA, Omega for
/// s-FAMA) and `kappa` the normalized threshold load.
class FamaBracket {
public:
    FamaBracket(int omega, int m, double kappa, double mu2,
                BesselKernel kernel = BesselKernel::Angular);

    double operator()(double x, double y) const;

    int omega() const { return omega_; }
    int shape() const { return m_; }
    double kappa() const { return kappa_; }

private:
    int omega_;
    int m_;
    double kappa_;
    double mu2_;
    BesselKernel kernel_;
    double scale_;               // sqrt(2 / (c (1 + kappa)))
    std::vector<double> coef_;   // weight of order 1 - omega + j, j = 0 .. b-1
};

/// The same bracket written with the unnormalized anchors t (desired) and
/// t0 (interference) and the model parameters, unscaled Bessel throughout.
/// Reference implementation for the equivalence tests; overflows quickly.
double fama_bracket_unnormalized(double t, double t0, int omega, int m, double iota,
                                 double interf_spread, double theta, double mu2);

/// f-FAMA outage, K >= 2 (mu^2 < 1). DomainError at mu^2 = 1.
AnalyticResult outage_f_fama(const DerivedParams& p, const QuadratureSettings& q = {});
/// f-FAMA outage for a single fixed port.
AnalyticResult outage_f_fama_k1(const DerivedParams& p, const QuadratureSettings& q = {});
/// s-FAMA outage, K >= 2. Omega must be an integer (DomainError otherwise);
/// Omega <= omega only adds a warning.
AnalyticResult outage_s_fama(const DerivedParams& p, const QuadratureSettings& q = {});
/// s-FAMA outage for a single fixed port; any real Omega.
AnalyticResult outage_s_fama_k1(const DerivedParams& p, const QuadratureSettings& q = {});
/// Noise-limited outage with K correlated ports (mu^2 < 1).
AnalyticResult outage_snr(const DerivedParams& p, const QuadratureSettings& q = {});
/// Noise-limited single-port closed form P(omega, omega tau^2 / iota).
double outage_snr_k1(const DerivedParams& p);

/// P(|g_1| < tau_1, ..., |g_K| < tau_K); K = tau.size(), correlation p.mu2.
double joint_cdf_desired(std::span<const double> tau, const DerivedParams& p,
                         const QuadratureSettings& q = {});
/// Joint density of |g_1|, ..., |g_K|.
double joint_pdf_desired(std::span<const double> tau, const DerivedParams& p,
                         const QuadratureSettings& q = {});
/// Joint density of |g_1^[s]|, ..., |g_K^[s]| (integer Omega).
double joint_pdf_s_interf(std::span<const double> tau, const DerivedParams& p,
                          const QuadratureSettings& q = {});

/// Normalized threshold loads used by the brackets.
double kappa_f(const DerivedParams& p);
double kappa_s(const DerivedParams& p);

}  // namespace famalab
