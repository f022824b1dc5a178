#include "famalab/channel.hpp"

#include "famalab/errors.hpp"

#include <cmath>
#include <numbers>

namespace famalab {

void sample_correlated_gaussian_block(TrialStream& rng, int n_ports, double mu, double sigma,
                                      CorrelatedBlock& out) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("correlation mu must lie in [0, 1]");
    const double spread = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    const std::complex<double> h0 = rng.complex_normal();
    out.anchor = sigma * h0;
    out.ports.resize(static_cast<std::size_t>(n_ports));
    for (auto& h : out.ports) h = sigma * (spread * rng.complex_normal() + mu * h0);
}

CorrelatedBlock sample_correlated_gaussian_block(TrialStream& rng, int n_ports, double mu,
                                                 double sigma) {
    CorrelatedBlock out;
    sample_correlated_gaussian_block(rng, n_ports, mu, sigma, out);
    return out;
}

void sample_realization(TrialStream& rng, const NetworkConfig& cfg, const DerivedParams& params,
                        ChannelRealization& out) {
    const int K = cfg.n_ports;
    const int U = cfg.n_interferers;
    const double mu = std::sqrt(params.mu2);
    const double alpha = cfg.path_loss_exp;
    out.n_ports = K;
    out.n_interferers = U;
    out.desired.assign(K, 0.0);
    out.f_interf.assign(K, 0.0);
    out.s_interf.assign(K, 0.0);
    out.interf_complex.resize(static_cast<std::size_t>(U) * K);

    thread_local CorrelatedBlock block;
    double anchor_power = 0.0;
    for (int n = 0; n < cfg.n_bs_antennas; ++n) {
        sample_correlated_gaussian_block(rng, K, mu, cfg.sigma, block);
        anchor_power += std::norm(block.anchor);
        for (int k = 0; k < K; ++k) out.desired[k] += std::norm(block.ports[k]);
    }
    const double g0 = std::pow(cfg.distances[0], -alpha);
    out.anchor_desired = std::sqrt(g0 * anchor_power);
    for (int k = 0; k < K; ++k) out.desired[k] = std::sqrt(g0 * out.desired[k]);

    thread_local std::vector<std::complex<double>> f_sum;
    f_sum.assign(K, {0.0, 0.0});
    std::complex<double> f_anchor{0.0, 0.0};
    double s_anchor = 0.0;
    for (int i = 0; i < U; ++i) {
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        const std::complex<double> symbol = std::polar(cfg.sigma_s, theta);
        sample_correlated_gaussian_block(rng, K, mu, cfg.sigma, block);
        const double amp = std::pow(cfg.distances[i + 1], -alpha / 2.0);
        const std::complex<double> a0 = amp * block.anchor;
        f_anchor += symbol * a0;
        s_anchor += std::norm(a0);
        for (int k = 0; k < K; ++k) {
            const std::complex<double> g = amp * block.ports[k];
            out.interf_complex[static_cast<std::size_t>(i) * K + k] = g;
            f_sum[k] += symbol * g;
            out.s_interf[k] += std::norm(g);
        }
    }
    for (int k = 0; k < K; ++k) {
        out.f_interf[k] = std::abs(f_sum[k]);
        out.s_interf[k] = std::sqrt(out.s_interf[k]);
    }
    out.anchor_f_interf = std::abs(f_anchor);
    out.anchor_s_interf = std::sqrt(s_anchor);
}

ChannelRealization sample_realization(TrialStream& rng, const NetworkConfig& cfg,
                                      const DerivedParams& params) {
    ChannelRealization out;
    sample_realization(rng, cfg, params, out);
    return out;
}

}  // namespace famalab
