// fama_lab: sweeps, validation and figure reproduction for cell-free
// MRT/FAMA outage analysis.
//
// Exit codes: 0 ok, 1 invariant failure, 2 configuration error,
// 3 numerical failure.

#include "famalab/analytic.hpp"
#include "famalab/config_json.hpp"
#include "famalab/errors.hpp"
#include "famalab/figures.hpp"
#include "famalab/montecarlo.hpp"
#include "famalab/runner.hpp"
#include "famalab/validate.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace famalab;

namespace {

constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

nlohmann::json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open " + path);
    try {
        return nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) throw 0;
        } catch (...) {
            throw ConfigError("bad number '" + item + "' in list '" + s + "'");
        }
    }
    return out;
}

// Flags that override NetworkConfig fields.
struct ConfigFlags {
    std::string file;
    std::optional<int> N, U, K;
    std::optional<double> W, alpha, sigma, sigma_s, sigma_eta, gamma_f, gamma_s, gamma_snr, gamma_snr_db;
    std::optional<double> gamma;
    std::string distances;
    std::optional<double> mu2;

    void add(CLI::App* app) {
        app->add_option("--config", file, "NetworkConfig JSON file");
        app->add_option("-N,--antennas", N, "BS antennas N");
        app->add_option("-U,--interferers", U, "interfering BSs U");
        app->add_option("-K,--ports", K, "FAS ports K");
        app->add_option("-W,--size", W, "FAS size in wavelengths");
        app->add_option("--alpha", alpha, "path-loss exponent");
        app->add_option("--sigma", sigma, "small-scale fading standard deviation");
        app->add_option("--sigma-s", sigma_s, "interferer symbol amplitude");
        app->add_option("--sigma-eta", sigma_eta, "noise standard deviation");
        app->add_option("--gamma", gamma, "sets both SIR thresholds (linear)");
        app->add_option("--gamma-f", gamma_f, "f-FAMA SIR threshold (linear)");
        app->add_option("--gamma-s", gamma_s, "s-FAMA SIR threshold (linear)");
        app->add_option("--gamma-snr", gamma_snr, "SNR threshold (linear)");
        app->add_option("--gamma-snr-db", gamma_snr_db, "SNR threshold in dB");
        app->add_option("--distances", distances, "comma separated r0,r1,...,rU");
        app->add_option("--mu2", mu2, "override the port correlation mu^2");
    }

    NetworkConfig build() const {
        NetworkConfig cfg;
        if (!file.empty()) cfg = config_from_json(load_json(file));
        if (N) cfg.n_bs_antennas = *N;
        if (K) cfg.n_ports = *K;
        if (W) cfg.fas_size = *W;
        if (alpha) cfg.path_loss_exp = *alpha;
        if (sigma) cfg.sigma = *sigma;
        if (sigma_s) cfg.sigma_s = *sigma_s;
        if (sigma_eta) cfg.sigma_eta = *sigma_eta;
        if (gamma) cfg.sir_threshold_f = cfg.sir_threshold_s = *gamma;
        if (gamma_f) cfg.sir_threshold_f = *gamma_f;
        if (gamma_s) cfg.sir_threshold_s = *gamma_s;
        if (gamma_snr) cfg.snr_threshold = *gamma_snr;
        if (gamma_snr_db) cfg.snr_threshold = std::pow(10.0, *gamma_snr_db / 10.0);
        if (!distances.empty()) {
            cfg.distances = parse_list(distances);
            if (!U) cfg.n_interferers = static_cast<int>(cfg.distances.size()) - 1;
        }
        if (U) {
            cfg.n_interferers = *U;
            if (distances.empty()) {
                const double r0 = cfg.distances.at(0);
                const double r1 = cfg.distances.size() > 1 ? cfg.distances[1] : r0;
                cfg.distances = make_distances(*U, r0, r1, "equal");
            }
        }
        cfg.validate();
        return cfg;
    }
};

int default_jobs() {
    if (const char* env = std::getenv("FAMA_LAB_JOBS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (...) {
            throw ConfigError(std::string("FAMA_LAB_JOBS is not an integer: ") + env);
        }
    }
    return 1;
}

void print_report(const ValidationReport& report, std::ostream& os) {
    for (const auto& c : report.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << '[' << c.group << "] " << c.name
           << ": measured=" << format_number(c.measured) << " expected=" << format_number(c.expected)
           << " tol=" << format_number(c.tolerance);
        if (!c.detail.empty()) os << " (" << c.detail << ')';
        os << '\n';
    }
    os << (report.all_passed() ? "all checks passed" : "some checks FAILED") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage analysis of cell-free MRT networks with fluid-antenna users"};
    app.require_subcommand(1);
    int jobs = 1;
    try {
        jobs = default_jobs();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    app.add_option("-j,--jobs", jobs, "worker threads (default $FAMA_LAB_JOBS or 1)")->check(CLI::PositiveNumber);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a sweep described by a JSON spec");
    std::string spec_path, csv_out, manifest_out;
    std::optional<std::uint64_t> sweep_seed, sweep_trials;
    bool sweep_timing = false;
    sweep->add_option("spec", spec_path, "sweep spec JSON")->required();
    sweep->add_option("-o,--out", csv_out, "CSV output (default stdout)");
    sweep->add_option("--manifest", manifest_out, "manifest JSON output");
    sweep->add_option("--seed", sweep_seed, "master seed (mandatory for mc unless in the spec)");
    sweep->add_option("--trials", sweep_trials, "Monte Carlo trials per point");
    sweep->add_flag("--timing", sweep_timing, "fill the wall_ms column");

    // validate
    auto* val = app.add_subcommand("validate", "run the invariant battery");
    ConfigFlags val_flags;
    val_flags.add(val);
    std::uint64_t val_trials = 1'000'000;
    std::uint64_t val_seed = 20240601;
    std::string val_json;
    val->add_option("--trials", val_trials, "Monte Carlo trials per check");
    val->add_option("--seed", val_seed, "master seed");
    val->add_option("--json", val_json, "write the report as JSON");

    // figure
    auto* fig = app.add_subcommand("figure", "reproduce a figure as CSV files");
    std::string fig_name, fig_out;
    FigureOptions fig_opts;
    bool fig_no_mc = false, fig_no_analytic = false;
    fig->add_option("name", fig_name, "fig2 | fig3 | fig4 | fig5 | fig6")->required();
    fig->add_option("--out", fig_out, "output directory")->required();
    fig->add_option("--trials", fig_opts.trials, "Monte Carlo trials per point");
    fig->add_option("--seed", fig_opts.seed, "master seed");
    fig->add_flag("--no-mc", fig_no_mc, "skip Monte Carlo curves");
    fig->add_flag("--no-analytic", fig_no_analytic, "skip analytic curves");
    fig->add_flag("--timing", fig_opts.timing, "fill the wall_ms column");

    // eval
    auto* ev = app.add_subcommand("eval", "evaluate one scheme at one configuration");
    ConfigFlags ev_flags;
    ev_flags.add(ev);
    std::string ev_scheme = "f_fama", ev_method = "analytic";
    std::optional<std::uint64_t> ev_seed;
    std::uint64_t ev_trials = 1'000'000;
    ev->add_option("--scheme", ev_scheme, "f_fama | s_fama | noise_limited")->required();
    ev->add_option("--method", ev_method, "mc | analytic")->required();
    ev->add_option("--seed", ev_seed, "master seed (mandatory for mc)");
    ev->add_option("--trials", ev_trials, "Monte Carlo trials");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*sweep) {
            SweepSpec spec = sweep_spec_from_json(load_json(spec_path));
            if (sweep_seed) spec.seed = *sweep_seed;
            if (sweep_trials) spec.trials = *sweep_trials;
            spec.jobs = jobs;
            spec.timing = sweep_timing;
            const SweepResult res = run_sweep(spec);
            if (csv_out.empty()) {
                write_csv(res, std::cout);
            } else {
                std::ofstream os(csv_out, std::ios::binary);
                if (!os) throw ConfigError("cannot write " + csv_out);
                write_csv(res, os);
            }
            if (!manifest_out.empty()) {
                std::ofstream ms(manifest_out, std::ios::binary);
                if (!ms) throw ConfigError("cannot write " + manifest_out);
                ms << res.manifest.dump(2) << '\n';
            }
            for (const auto& row : res.rows) {
                if (row.failed) {
                    std::cerr << "warning: " << format_number(row.axis_value) << ' ' << to_string(row.scheme)
                              << ' ' << to_string(row.method) << ": " << row.message << '\n';
                }
            }
            return 0;
        }
        if (*val) {
            const NetworkConfig cfg = val_flags.build();
            ValidateOptions opts;
            opts.trials = val_trials;
            opts.seed = val_seed;
            opts.jobs = jobs;
            opts.mu2_override = val_flags.mu2;
            const ValidationReport report = validate(cfg, opts);
            print_report(report, std::cout);
            if (!val_json.empty()) {
                std::ofstream os(val_json, std::ios::binary);
                if (!os) throw ConfigError("cannot write " + val_json);
                os << report.to_json().dump(2) << '\n';
            }
            return report.all_passed() ? 0 : kExitInvariant;
        }
        if (*fig) {
            fig_opts.jobs = jobs;
            fig_opts.mc = !fig_no_mc;
            fig_opts.analytic = !fig_no_analytic;
            for (const auto& path : write_figure(fig_name, fig_out, fig_opts)) {
                std::cout << path.string() << '\n';
            }
            return 0;
        }
        if (*ev) {
            SweepSpec spec;
            spec.base = ev_flags.build();
            spec.mu2_override = ev_flags.mu2;
            spec.schemes = {scheme_from_string(ev_scheme)};
            spec.methods = {method_from_string(ev_method)};
            spec.trials = ev_trials;
            spec.seed = ev_seed;
            spec.jobs = jobs;
            // A threshold axis with the scheme's own threshold as the single value.
            spec.axis = Axis::Threshold;
            const Scheme s = spec.schemes.front();
            spec.values = {s == Scheme::FFama   ? spec.base.sir_threshold_f
                           : s == Scheme::SFama ? spec.base.sir_threshold_s
                                                : spec.base.snr_threshold};
            const SweepResult res = run_sweep(spec);
            write_csv(res, std::cout);
            const auto& row = res.rows.front();
            if (row.failed) {
                std::cerr << "error: " << row.message << '\n';
                return kExitNumerical;
            }
            if (!row.message.empty()) std::cerr << "warning: " << row.message << '\n';
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
