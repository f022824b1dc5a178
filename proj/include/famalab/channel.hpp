#pragma once

#include "famalab/netmodel.hpp"
#include "famalab/rng.hpp"

#include <complex>
#include <vector>

namespace famalab {

/// Port-0 reference values plus K correlated ports.
struct CorrelatedBlock {
    std::complex<double> anchor;
    std::vector<std::complex<double>> ports;
};

/// h_k = sigma (sqrt(1 - mu^2) w_k + mu h_0) with h_0, w_k ~ CN(0, 1).
/// Draw order: anchor first, then ports 1..K.
void sample_correlated_gaussian_block(TrialStream& rng, int n_ports, double mu, double sigma,
                                      CorrelatedBlock& out);
CorrelatedBlock sample_correlated_gaussian_block(TrialStream& rng, int n_ports, double mu,
                                                 double sigma);

/// One small-scale fading draw.
struct ChannelRealization {
    int n_ports = 0;
    int n_interferers = 0;
    std::vector<double> desired;                       // |g_k|
    std::vector<std::complex<double>> interf_complex;  // g_k^(i), row i, column k
    std::vector<double> f_interf;                      // |sum_i s_i g_k^(i)|
    std::vector<double> s_interf;                      // sqrt(sum_i |g_k^(i)|^2)
    double anchor_desired = 0.0;
    double anchor_f_interf = 0.0;
    double anchor_s_interf = 0.0;

    std::complex<double> interf(int i, int k) const {
        return interf_complex[static_cast<std::size_t>(i) * n_ports + k];
    }
};

/// Draws N desired blocks, then per interferer a symbol phase and a block.
/// `out` is resized as needed so it can be reused across trials.
void sample_realization(TrialStream& rng, const NetworkConfig& cfg, const DerivedParams& params,
                        ChannelRealization& out);
ChannelRealization sample_realization(TrialStream& rng, const NetworkConfig& cfg,
                                      const DerivedParams& params);

}  // namespace famalab
