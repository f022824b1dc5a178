#include "famalab/figures.hpp"

#include "famalab/errors.hpp"

#include <cmath>
#include <fstream>

namespace famalab {

namespace {

std::vector<double> range(double first, double last, double step) {
    std::vector<double> v;
    for (double x = first; x <= last + 1e-9 * step; x += step) v.push_back(x);
    return v;
}

SweepSpec base_spec(const FigureOptions& opts) {
    SweepSpec s;
    s.trials = opts.trials;
    s.seed = opts.seed;
    s.jobs = opts.jobs;
    s.quad = opts.quad;
    s.timing = opts.timing;
    s.methods.clear();
    if (opts.mc) s.methods.push_back(Method::MC);
    if (opts.analytic) s.methods.push_back(Method::Analytic);
    if (s.methods.empty()) throw ConfigError("figure needs at least one of mc/analytic");
    return s;
}

NetworkConfig with_distances(std::vector<double> r) {
    NetworkConfig cfg;
    cfg.n_interferers = static_cast<int>(r.size()) - 1;
    cfg.distances = std::move(r);
    return cfg;
}

void set_sir(NetworkConfig& cfg, double g) {
    cfg.sir_threshold_f = g;
    cfg.sir_threshold_s = g;
}

std::string fmt_tag(double v) {
    std::string s = format_number(v);
    for (char& c : s) {
        if (c == '.') c = 'p';
    }
    return s;
}

}  // namespace

std::vector<std::string> figure_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6"}; }

std::vector<FigurePart> figure_parts(const std::string& name, const FigureOptions& opts) {
    std::vector<FigurePart> parts;
    // 10 .. 30 dB in 2.5 dB steps
    std::vector<double> sir_grid;
    for (int i = 0; i <= 8; ++i) sir_grid.push_back(std::pow(10.0, (10.0 + 2.5 * i) / 10.0));
    if (name == "fig2") {
        // Unequal distances (Omega ~ 1.83: analytic s-FAMA rows are marked
        // as errors) and an equal-distance companion with integer Omega.
        for (auto [tag, r] : {std::pair<std::string, std::vector<double>>{"fig2", {200, 400, 600, 800}},
                              {"fig2_equal", {200, 400, 400, 400}}}) {
            SweepSpec s = base_spec(opts);
            s.base = with_distances(r);
            s.base.n_ports = 10;
            s.axis = Axis::Threshold;
            s.values = sir_grid;
            parts.push_back({tag, s});
        }
    } else if (name == "fig3") {
        for (double g : {18.0, 14.0}) {
            SweepSpec s = base_spec(opts);
            s.base = with_distances({200, 400, 600, 800});
            s.base.n_ports = 2;
            set_sir(s.base, g);
            s.axis = Axis::N;
            s.values = range(1, 8, 1);
            parts.push_back({"fig3_gamma" + fmt_tag(g), s});
        }
    } else if (name == "fig4") {
        for (int n : {2, 4}) {
            SweepSpec s = base_spec(opts);
            s.base.n_bs_antennas = n;
            s.axis = Axis::K;
            s.values = {1, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
            parts.push_back({"fig4_N" + std::to_string(n), s});
        }
        {
            // Fixed single antenna against the BS array size.
            SweepSpec s = base_spec(opts);
            s.base.n_ports = 1;
            s.axis = Axis::N;
            s.values = range(1, 40, 1);
            parts.push_back({"fig4_fixed", s});
        }
        for (int n : {2, 3, 4, 6}) {
            SweepSpec s = base_spec(opts);
            s.base.n_bs_antennas = n;
            s.schemes = {Scheme::NoiseLimited};
            s.axis = Axis::K;
            s.values = {1, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
            parts.push_back({"fig4_snr_N" + std::to_string(n), s});
        }
    } else if (name == "fig5") {
        for (int u : {1, 2, 3}) {
            SweepSpec s = base_spec(opts);
            s.base = with_distances(std::vector<double>(static_cast<std::size_t>(u) + 1, 100.0));
            s.base.n_ports = 60;
            set_sir(s.base, 6.0);
            s.axis = Axis::W;
            s.values = range(0.5, 5.0, 0.5);
            parts.push_back({"fig5_U" + std::to_string(u), s});
        }
    } else if (name == "fig6") {
        for (int k : {25, 30}) {
            SweepSpec s = base_spec(opts);
            s.base.n_ports = k;
            set_sir(s.base, 3.0);
            s.axis = Axis::U;
            s.values = range(1, 6, 1);
            s.distance_rule = "equal";
            parts.push_back({"fig6_K" + std::to_string(k), s});
        }
    } else {
        throw ConfigError("unknown figure '" + name + "' (expected fig2 .. fig6)");
    }
    return parts;
}

std::vector<std::filesystem::path> write_figure(const std::string& name,
                                                const std::filesystem::path& out_dir,
                                                const FigureOptions& opts) {
    const auto parts = figure_parts(name, opts);
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    nlohmann::json manifest = {{"figure", name}, {"parts", nlohmann::json::array()}};
    for (const FigurePart& part : parts) {
        const SweepResult res = run_sweep(part.spec);
        nlohmann::json files = nlohmann::json::array();
        for (Scheme s : part.spec.schemes) {
            for (Method m : part.spec.methods) {
                SweepResult curve;
                curve.timing = res.timing;
                for (const SweepRow& row : res.rows) {
                    if (row.scheme == s && row.method == m) curve.rows.push_back(row);
                }
                const auto path = out_dir / (part.tag + "_" + to_string(s) + "_" + to_string(m) + ".csv");
                std::ofstream os(path, std::ios::binary);
                if (!os) throw std::runtime_error("cannot write " + path.string());
                write_csv(curve, os);
                if (!os) throw std::runtime_error("write failed for " + path.string());
                written.push_back(path);
                files.push_back(path.filename().string());
            }
        }
        nlohmann::json entry = res.manifest;
        entry["tag"] = part.tag;
        entry["files"] = files;
        manifest["parts"].push_back(entry);
    }
    const auto mpath = out_dir / (name + "_manifest.json");
    std::ofstream ms(mpath, std::ios::binary);
    if (!ms) throw std::runtime_error("cannot write " + mpath.string());
    ms << manifest.dump(2) << '\n';
    written.push_back(mpath);
    return written;
}

}  // namespace famalab
