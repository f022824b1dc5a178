#pragma once

#include "famalab/netmodel.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace famalab {

enum class Scheme { FFama, SFama, NoiseLimited };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct OutageEstimate {
    double probability = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t outages = 0;
    double std_error = 0.0;  // sqrt(p (1 - p) / trials)
    Scheme scheme = Scheme::FFama;
    std::uint64_t seed = 0;
    /// Set when the relative standard error exceeds 30% (including zero
    /// observed outages); the estimate is then only an order of magnitude.
    bool low_precision = false;
};

struct McOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::uint64_t batch_size = std::uint64_t{1} << 16;
};

/// Estimate for one (scheme, threshold) from a finished count.
OutageEstimate make_estimate(Scheme scheme, std::uint64_t outages, std::uint64_t trials,
                             std::uint64_t seed);

/// Outage against several thresholds from the same realizations. Thresholds
/// are the scheme's gamma in linear units (SIR for f/s-FAMA, SNR for the
/// noise-limited case); results come back in the input order.
std::vector<OutageEstimate> outage_curve_mc(const NetworkConfig& cfg, const DerivedParams& params,
                                            Scheme scheme, std::span<const double> thresholds,
                                            const McOptions& opts);

/// Single-point estimates at the thresholds stored in `cfg`/`params`.
OutageEstimate outage_f_fama_mc(const NetworkConfig& cfg, const DerivedParams& params,
                                std::uint64_t trials, std::uint64_t seed, int jobs = 1);
OutageEstimate outage_s_fama_mc(const NetworkConfig& cfg, const DerivedParams& params,
                                std::uint64_t trials, std::uint64_t seed, int jobs = 1);
OutageEstimate outage_snr_mc(const NetworkConfig& cfg, const DerivedParams& params,
                             std::uint64_t trials, std::uint64_t seed, int jobs = 1);

enum class Quantity { Desired, FInterf, SInterf };

std::string to_string(Quantity q);
Quantity quantity_from_string(const std::string& s);

/// Histogram and moments of one port magnitude. The s-FAMA magnitude is
/// reported as sigma_s |g^[s]| so it is on the same scale as |g^I|.
struct EmpiricalDistribution {
    Quantity which = Quantity::Desired;
    std::uint64_t trials = 0;
    double bin_width = 0.0;
    std::vector<double> bin_edges;  // size bins + 1
    std::vector<double> density;    // size bins; mass beyond the last edge is dropped
    double mean = 0.0;              // of the magnitude
    double variance = 0.0;
    double mean_sq = 0.0;           // of the squared magnitude
    double variance_sq = 0.0;
    double port_correlation = 0.0;  // corr(|x_0|^2, |x_1|^2), anchor vs port 1
};

/// Port 1 is sampled (ports are exchangeable). `upper` <= 0 picks
/// 4 x the theoretical RMS as the histogram range.
EmpiricalDistribution empirical_distribution(const NetworkConfig& cfg, const DerivedParams& params,
                                             std::uint64_t trials, std::uint64_t seed,
                                             Quantity which, int bins = 100, double upper = 0.0,
                                             int jobs = 1);

}  // namespace famalab
