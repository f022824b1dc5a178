#include "famalab/montecarlo.hpp"

#include "famalab/channel.hpp"
#include "famalab/errors.hpp"
#include "famalab/parallel.hpp"
#include "famalab/rng.hpp"

#include <algorithm>
#include <numeric>

namespace famalab {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::FFama: return "f_fama";
        case Scheme::SFama: return "s_fama";
        case Scheme::NoiseLimited: return "noise_limited";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "f_fama" || s == "f") return Scheme::FFama;
    if (s == "s_fama" || s == "s") return Scheme::SFama;
    if (s == "noise_limited" || s == "snr") return Scheme::NoiseLimited;
    throw ConfigError("unknown scheme '" + s + "' (expected f_fama, s_fama or noise_limited)");
}

std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::Desired: return "desired";
        case Quantity::FInterf: return "f_interf";
        case Quantity::SInterf: return "s_interf";
    }
    return "?";
}

Quantity quantity_from_string(const std::string& s) {
    if (s == "desired") return Quantity::Desired;
    if (s == "f_interf") return Quantity::FInterf;
    if (s == "s_interf") return Quantity::SInterf;
    throw ConfigError("unknown quantity '" + s + "'");
}

OutageEstimate make_estimate(Scheme scheme, std::uint64_t outages, std::uint64_t trials,
                             std::uint64_t seed) {
    OutageEstimate e;
    e.scheme = scheme;
    e.trials = trials;
    e.outages = outages;
    e.seed = seed;
    e.probability = trials ? static_cast<double>(outages) / static_cast<double>(trials) : 0.0;
    e.std_error = trials ? std::sqrt(e.probability * (1.0 - e.probability) / trials) : 0.0;
    e.low_precision = outages == 0 || e.std_error > 0.3 * e.probability;
    return e;
}

namespace {

std::uint64_t batch_count(const McOptions& opts) {
    if (opts.trials == 0) throw ConfigError("trials must be >= 1");
    if (opts.batch_size == 0) throw ConfigError("batch_size must be >= 1");
    return (opts.trials + opts.batch_size - 1) / opts.batch_size;
}

// Selection statistic of one realization and the matching threshold scale.
double statistic(Scheme scheme, const ChannelRealization& h) {
    double best = 0.0;
    const int K = h.n_ports;
    switch (scheme) {
        case Scheme::FFama:
            for (int k = 0; k < K; ++k) best = std::max(best, h.desired[k] / h.f_interf[k]);
            break;
        case Scheme::SFama:
            for (int k = 0; k < K; ++k) best = std::max(best, h.desired[k] / h.s_interf[k]);
            break;
        case Scheme::NoiseLimited:
            for (int k = 0; k < K; ++k) best = std::max(best, h.desired[k]);
            break;
    }
    return best;
}

double statistic_threshold(Scheme scheme, const NetworkConfig& cfg, double gamma) {
    switch (scheme) {
        case Scheme::FFama: return std::sqrt(gamma / (cfg.sigma_s * cfg.sigma_s));
        case Scheme::SFama: return std::sqrt(gamma);
        case Scheme::NoiseLimited:
            return std::sqrt(cfg.sigma_eta * cfg.sigma_eta * gamma / (cfg.sigma_s * cfg.sigma_s));
    }
    return 0.0;
}

}  // namespace

std::vector<OutageEstimate> outage_curve_mc(const NetworkConfig& cfg, const DerivedParams& params,
                                            Scheme scheme, std::span<const double> thresholds,
                                            const McOptions& opts) {
    cfg.validate();
    for (double g : thresholds) {
        if (!(g >= 0.0) || std::isnan(g)) throw ConfigError("thresholds must be >= 0");
    }
    const std::uint64_t batches = batch_count(opts);
    const std::size_t m = thresholds.size();

    // Sorted statistic thresholds; a trial is in outage for every threshold
    // strictly above its statistic.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> level(m);
    for (std::size_t j = 0; j < m; ++j) level[j] = statistic_threshold(scheme, cfg, thresholds[j]);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return level[x] < level[y]; });
    std::vector<double> sorted(m);
    for (std::size_t j = 0; j < m; ++j) sorted[j] = level[order[j]];

    // counts[b][j]: trials of batch b whose statistic falls below sorted[j]
    // but not sorted[j-1]; prefix sums give the outage counts.
    std::vector<std::vector<std::uint64_t>> counts(batches, std::vector<std::uint64_t>(m + 1, 0));
    parallel_for(batches, opts.jobs, [&](std::size_t b) {
        ChannelRealization h;
        const std::uint64_t first = b * opts.batch_size;
        const std::uint64_t last = std::min(opts.trials, first + opts.batch_size);
        auto& local = counts[b];
        for (std::uint64_t t = first; t < last; ++t) {
            TrialStream rng(opts.seed, t);
            sample_realization(rng, cfg, params, h);
            const double s = statistic(scheme, h);
            const auto pos = std::upper_bound(sorted.begin(), sorted.end(), s) - sorted.begin();
            ++local[static_cast<std::size_t>(pos)];
        }
    });
    std::vector<std::uint64_t> bucket(m + 1, 0);
    for (const auto& c : counts) {
        for (std::size_t j = 0; j <= m; ++j) bucket[j] += c[j];
    }
    std::vector<OutageEstimate> out(m);
    std::uint64_t below = 0;
    for (std::size_t j = 0; j < m; ++j) {
        // Statistic < sorted[j] <=> upper_bound position <= j.
        below += bucket[j];
        out[order[j]] = make_estimate(scheme, below, opts.trials, opts.seed);
    }
    return out;
}

namespace {

OutageEstimate single_point(const NetworkConfig& cfg, const DerivedParams& params, Scheme scheme,
                            double gamma, std::uint64_t trials, std::uint64_t seed, int jobs) {
    McOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    opts.jobs = jobs;
    const double g[1] = {gamma};
    return outage_curve_mc(cfg, params, scheme, g, opts).front();
}

}  // namespace

OutageEstimate outage_f_fama_mc(const NetworkConfig& cfg, const DerivedParams& params,
                                std::uint64_t trials, std::uint64_t seed, int jobs) {
    return single_point(cfg, params, Scheme::FFama, cfg.sir_threshold_f, trials, seed, jobs);
}

OutageEstimate outage_s_fama_mc(const NetworkConfig& cfg, const DerivedParams& params,
                                std::uint64_t trials, std::uint64_t seed, int jobs) {
    return single_point(cfg, params, Scheme::SFama, cfg.sir_threshold_s, trials, seed, jobs);
}

OutageEstimate outage_snr_mc(const NetworkConfig& cfg, const DerivedParams& params,
                             std::uint64_t trials, std::uint64_t seed, int jobs) {
    return single_point(cfg, params, Scheme::NoiseLimited, cfg.snr_threshold, trials, seed, jobs);
}

EmpiricalDistribution empirical_distribution(const NetworkConfig& cfg, const DerivedParams& params,
                                             std::uint64_t trials, std::uint64_t seed,
                                             Quantity which, int bins, double upper, int jobs) {
    cfg.validate();
    if (trials < 10'000) throw ConfigError("empirical_distribution needs at least 1e4 trials");
    if (bins < 1) throw ConfigError("bins must be >= 1");
    if (cfg.n_ports < 1) throw ConfigError("n_ports must be >= 1");
    if (upper <= 0.0) {
        double power = 0.0;
        switch (which) {
            case Quantity::Desired: power = params.iota; break;
            case Quantity::FInterf: power = params.sigma_I2; break;
            case Quantity::SInterf: power = cfg.sigma_s * cfg.sigma_s * params.phi; break;
        }
        upper = 4.0 * std::sqrt(power);
    }
    McOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    opts.jobs = jobs;
    const std::uint64_t batches = batch_count(opts);

    struct Partial {
        std::vector<std::uint64_t> hist;
        double s1 = 0, s2 = 0, s4 = 0, a2 = 0, a4 = 0, cross = 0;
    };
    std::vector<Partial> parts(batches);
    const double width = upper / bins;
    parallel_for(batches, jobs, [&](std::size_t b) {
        ChannelRealization h;
        Partial& p = parts[b];
        p.hist.assign(static_cast<std::size_t>(bins), 0);
        const std::uint64_t first = b * opts.batch_size;
        const std::uint64_t last = std::min(trials, first + opts.batch_size);
        for (std::uint64_t t = first; t < last; ++t) {
            TrialStream rng(seed, t);
            sample_realization(rng, cfg, params, h);
            double v = 0.0;
            double a = 0.0;
            switch (which) {
                case Quantity::Desired: v = h.desired[0]; a = h.anchor_desired; break;
                case Quantity::FInterf: v = h.f_interf[0]; a = h.anchor_f_interf; break;
                case Quantity::SInterf:
                    v = cfg.sigma_s * h.s_interf[0];
                    a = cfg.sigma_s * h.anchor_s_interf;
                    break;
            }
            const double v2 = v * v;
            const double a2 = a * a;
            p.s1 += v;
            p.s2 += v2;
            p.s4 += v2 * v2;
            p.a2 += a2;
            p.a4 += a2 * a2;
            p.cross += a2 * v2;
            const auto bin = static_cast<std::int64_t>(v / width);
            if (bin >= 0 && bin < bins) ++p.hist[static_cast<std::size_t>(bin)];
        }
    });

    EmpiricalDistribution out;
    out.which = which;
    out.trials = trials;
    out.bin_width = width;
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(bins), 0);
    double s1 = 0, s2 = 0, s4 = 0, a2 = 0, a4 = 0, cross = 0;
    for (const Partial& p : parts) {
        for (int j = 0; j < bins; ++j) hist[j] += p.hist[j];
        s1 += p.s1;
        s2 += p.s2;
        s4 += p.s4;
        a2 += p.a2;
        a4 += p.a4;
        cross += p.cross;
    }
    const double n = static_cast<double>(trials);
    out.mean = s1 / n;
    out.mean_sq = s2 / n;
    out.variance = out.mean_sq - out.mean * out.mean;
    out.variance_sq = s4 / n - out.mean_sq * out.mean_sq;
    const double mean_a2 = a2 / n;
    const double var_a2 = a4 / n - mean_a2 * mean_a2;
    const double cov = cross / n - mean_a2 * out.mean_sq;
    out.port_correlation = cov / std::sqrt(var_a2 * out.variance_sq);
    out.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int j = 0; j <= bins; ++j) out.bin_edges[j] = j * width;
    out.density.resize(static_cast<std::size_t>(bins));
    for (int j = 0; j < bins; ++j) out.density[j] = static_cast<double>(hist[j]) / (n * width);
    return out;
}

}  // namespace famalab
