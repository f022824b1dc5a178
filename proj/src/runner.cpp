#include "famalab/runner.hpp"

#include "famalab/config_json.hpp"
#include "famalab/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#ifndef FAMALAB_VERSION
#define FAMALAB_VERSION "0.0.0"
#endif

namespace famalab {

std::string to_string(Axis a) {
    switch (a) {
        case Axis::Threshold: return "threshold";
        case Axis::N: return "N";
        case Axis::K: return "K";
        case Axis::W: return "W";
        case Axis::U: return "U";
    }
    return "?";
}

std::string to_string(Method m) { return m == Method::MC ? "mc" : "analytic"; }

Axis axis_from_string(const std::string& s) {
    if (s == "threshold" || s == "THRESHOLD") return Axis::Threshold;
    if (s == "N" || s == "n") return Axis::N;
    if (s == "K" || s == "k") return Axis::K;
    if (s == "W" || s == "w") return Axis::W;
    if (s == "U" || s == "u") return Axis::U;
    throw ConfigError("unknown axis '" + s + "' (expected threshold, N, K, W or U)");
}

Method method_from_string(const std::string& s) {
    if (s == "mc" || s == "MC") return Method::MC;
    if (s == "analytic" || s == "ANALYTIC") return Method::Analytic;
    throw ConfigError("unknown method '" + s + "' (expected mc or analytic)");
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

bool is_integer_axis(Axis a) { return a == Axis::N || a == Axis::K || a == Axis::U; }

int as_count(double v, const std::string& what) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) {
        throw ConfigError(what + " axis values must be positive integers, got " + format_number(v));
    }
    return static_cast<int>(v);
}

}  // namespace

void SweepSpec::validate() const {
    base.validate();
    if (values.empty()) throw ConfigError("sweep values must be nonempty");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) throw ConfigError("sweep values must be strictly increasing");
    }
    for (double v : values) {
        if (!std::isfinite(v) || v <= 0.0) throw ConfigError("sweep values must be positive");
        if (is_integer_axis(axis)) as_count(v, to_string(axis));
    }
    if (schemes.empty()) throw ConfigError("at least one scheme is required");
    if (methods.empty()) throw ConfigError("at least one method is required");
    bool mc = false;
    for (Method m : methods) mc = mc || m == Method::MC;
    if (mc && !seed) throw ConfigError("a seed is required for Monte Carlo runs");
    if (mc && trials == 0) throw ConfigError("trials must be >= 1");
    if (distance_rule != "equal" && distance_rule != "linear") {
        throw ConfigError("distance_rule must be equal or linear");
    }
    if (interferer_distance && !(*interferer_distance > 0.0)) {
        throw ConfigError("interferer_distance must be positive");
    }
    if (mu2_override && !(*mu2_override >= 0.0 && *mu2_override <= 1.0)) {
        throw ConfigError("mu2 must lie in [0, 1]");
    }
}

NetworkConfig config_at(const SweepSpec& spec, double value) {
    NetworkConfig cfg = spec.base;
    switch (spec.axis) {
        case Axis::Threshold:
            cfg.sir_threshold_f = value;
            cfg.sir_threshold_s = value;
            cfg.snr_threshold = value;
            break;
        case Axis::N: cfg.n_bs_antennas = as_count(value, "N"); break;
        case Axis::K: cfg.n_ports = as_count(value, "K"); break;
        case Axis::W: cfg.fas_size = value; break;
        case Axis::U: {
            const int u = as_count(value, "U");
            const double spacing =
                spec.interferer_distance.value_or(spec.base.distances.size() > 1 ? spec.base.distances[1]
                                                                                 : spec.base.distances[0]);
            cfg.n_interferers = u;
            cfg.distances = make_distances(u, spec.base.distances[0], spacing, spec.distance_rule);
            break;
        }
    }
    return cfg;
}

namespace {

double scheme_threshold(Scheme s, const NetworkConfig& cfg) {
    switch (s) {
        case Scheme::FFama: return cfg.sir_threshold_f;
        case Scheme::SFama: return cfg.sir_threshold_s;
        case Scheme::NoiseLimited: return cfg.snr_threshold;
    }
    return 0.0;
}

AnalyticResult analytic_eval(Scheme s, const DerivedParams& p, const QuadratureSettings& q) {
    const bool single = p.mu2 >= 1.0;
    switch (s) {
        case Scheme::FFama: return single ? outage_f_fama_k1(p, q) : outage_f_fama(p, q);
        case Scheme::SFama: return single ? outage_s_fama_k1(p, q) : outage_s_fama(p, q);
        case Scheme::NoiseLimited:
            if (single) {
                AnalyticResult r;
                r.probability = outage_snr_k1(p);
                return r;
            }
            return outage_snr(p, q);
    }
    return {};
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    result.timing = spec.timing;
    nlohmann::json points = nlohmann::json::array();

    // Threshold sweeps share one set of realizations per scheme.
    std::map<std::pair<int, std::size_t>, SweepRow> mc_curve;
    const bool want_mc =
        std::find(spec.methods.begin(), spec.methods.end(), Method::MC) != spec.methods.end();
    if (spec.axis == Axis::Threshold && want_mc) {
        const DerivedParams p = derive(spec.base, spec.mu2_override);
        McOptions opts{spec.trials, *spec.seed, spec.jobs};
        for (Scheme s : spec.schemes) {
            const auto t0 = Clock::now();
            const auto est = outage_curve_mc(spec.base, p, s, spec.values, opts);
            const double each = ms_since(t0) / static_cast<double>(spec.values.size());
            for (std::size_t i = 0; i < spec.values.size(); ++i) {
                SweepRow row;
                row.axis_value = spec.values[i];
                row.scheme = s;
                row.method = Method::MC;
                row.probability = est[i].probability;
                row.uncertainty = est[i].std_error;
                row.trials = est[i].trials;
                row.low_precision = est[i].low_precision;
                row.wall_ms = each;
                mc_curve[{static_cast<int>(s), i}] = row;
            }
        }
    }

    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        const double value = spec.values[i];
        const NetworkConfig cfg = config_at(spec, value);
        std::optional<DerivedParams> params;
        std::string derive_error;
        try {
            params = derive(cfg, spec.mu2_override);
        } catch (const std::exception& e) {
            derive_error = e.what();
        }
        nlohmann::json point = {{"axis_value", value}, {"config", config_to_json(cfg)}};
        if (params) point["derived"] = derived_to_json(*params);
        points.push_back(point);

        for (Scheme s : spec.schemes) {
            for (Method m : spec.methods) {
                SweepRow row;
                row.axis_value = value;
                row.scheme = s;
                row.method = m;
                if (!params) {
                    row.failed = true;
                    row.message = derive_error;
                    result.rows.push_back(row);
                    continue;
                }
                if (m == Method::MC && spec.axis == Axis::Threshold) {
                    result.rows.push_back(mc_curve.at({static_cast<int>(s), i}));
                    continue;
                }
                const auto t0 = Clock::now();
                try {
                    if (m == Method::MC) {
                        McOptions opts{spec.trials, *spec.seed, spec.jobs};
                        const double g[1] = {scheme_threshold(s, cfg)};
                        const auto est = outage_curve_mc(cfg, *params, s, g, opts).front();
                        row.probability = est.probability;
                        row.uncertainty = est.std_error;
                        row.trials = est.trials;
                        row.low_precision = est.low_precision;
                    } else {
                        QuadratureSettings q = spec.quad;
                        q.jobs = spec.jobs;
                        const auto r = analytic_eval(s, *params, q);
                        row.probability = r.probability;
                        row.uncertainty = r.error;
                        for (const auto& w : r.warnings) {
                            row.message += (row.message.empty() ? "" : "; ") + w;
                        }
                    }
                } catch (const std::exception& e) {
                    row.failed = true;
                    row.message = e.what();
                }
                row.wall_ms = ms_since(t0);
                result.rows.push_back(row);
            }
        }
    }

    nlohmann::json notes = nlohmann::json::array();
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
        const SweepRow& row = result.rows[r];
        if (row.failed || !row.message.empty() || row.low_precision) {
            notes.push_back({{"row", r},
                             {"axis_value", row.axis_value},
                             {"scheme", to_string(row.scheme)},
                             {"method", to_string(row.method)},
                             {"status", row.failed ? "error" : (row.message.empty() ? "low_precision" : "warning")},
                             {"message", row.message}});
        }
    }
    result.manifest = {{"software", {{"name", "famalab"}, {"version", FAMALAB_VERSION}}},
                       {"spec", sweep_spec_to_json(spec)},
                       {"points", points},
                       {"row_notes", notes},
                       {"columns", {"axis_value", "scheme", "method", "probability", "uncertainty",
                                    "trials", "wall_ms"}}};
    return result;
}

void write_csv(const SweepResult& result, std::ostream& os) {
    os << "axis_value,scheme,method,probability,uncertainty,trials,wall_ms\r\n";
    for (const SweepRow& row : result.rows) {
        os << format_number(row.axis_value) << ',' << to_string(row.scheme) << ','
           << to_string(row.method) << ',';
        if (row.failed) {
            os << "ERR,,";
        } else {
            os << format_number(row.probability) << ',' << format_number(row.uncertainty) << ',';
        }
        if (row.method == Method::MC && !row.failed) os << row.trials;
        os << ',';
        if (result.timing) os << format_number(row.wall_ms);
        os << "\r\n";
    }
}

nlohmann::json quadrature_to_json(const QuadratureSettings& q) {
    const char* kernel = q.kernel == BesselKernel::Angular        ? "angular"
                         : q.kernel == BesselKernel::ScaledBessel ? "scaled_bessel"
                                                                  : "unscaled_bessel";
    return {{"rel_tol", q.rel_tol},
            {"abs_tol", q.abs_tol},
            {"envelope_cut", q.envelope_cut},
            {"max_subdivisions", q.max_subdivisions},
            {"panels", q.panels},
            {"kernel", kernel}};
}

nlohmann::json derived_to_json(const DerivedParams& p) {
    return {{"mu2", p.mu2},         {"omega", p.omega},     {"iota", p.iota},
            {"sigma_I2", p.sigma_I2}, {"Omega", p.Omega},   {"phi", p.phi},
            {"theta_f", p.theta_f}, {"theta_s", p.theta_s}, {"a", p.a},
            {"b", p.b},             {"nu_scale", p.nu_scale}, {"noise_tau", p.noise_tau}};
}

nlohmann::json sweep_spec_to_json(const SweepSpec& spec) {
    nlohmann::json schemes = nlohmann::json::array();
    for (Scheme s : spec.schemes) schemes.push_back(to_string(s));
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : spec.methods) methods.push_back(to_string(m));
    nlohmann::json j = {{"base", config_to_json(spec.base)},
                        {"axis", to_string(spec.axis)},
                        {"values", spec.values},
                        {"schemes", schemes},
                        {"methods", methods},
                        {"trials", spec.trials},
                        {"distance_rule", spec.distance_rule},
                        {"quadrature", quadrature_to_json(spec.quad)}};
    j["seed"] = spec.seed ? nlohmann::json(*spec.seed) : nlohmann::json(nullptr);
    if (spec.interferer_distance) j["interferer_distance"] = *spec.interferer_distance;
    if (spec.mu2_override) j["mu2"] = *spec.mu2_override;
    return j;
}

namespace {

QuadratureSettings quadrature_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("quadrature must be a JSON object");
    QuadratureSettings q;
    for (const auto& [key, v] : j.items()) {
        if (key == "rel_tol") q.rel_tol = v.get<double>();
        else if (key == "abs_tol") q.abs_tol = v.get<double>();
        else if (key == "envelope_cut") q.envelope_cut = v.get<double>();
        else if (key == "max_subdivisions") q.max_subdivisions = v.get<int>();
        else if (key == "panels") q.panels = v.get<int>();
        else if (key == "kernel") {
            const auto k = v.get<std::string>();
            if (k == "angular") q.kernel = BesselKernel::Angular;
            else if (k == "scaled_bessel") q.kernel = BesselKernel::ScaledBessel;
            else if (k == "unscaled_bessel") q.kernel = BesselKernel::UnscaledBessel;
            else throw ConfigError("unknown quadrature kernel '" + k + "'");
        } else {
            throw ConfigError("unknown quadrature key '" + key + "'");
        }
    }
    return q;
}

}  // namespace

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("sweep spec must be a JSON object");
    SweepSpec spec;
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "base") spec.base = config_from_json(v);
            else if (key == "axis") spec.axis = axis_from_string(v.get<std::string>());
            else if (key == "values") spec.values = v.get<std::vector<double>>();
            else if (key == "schemes") {
                spec.schemes.clear();
                for (const auto& s : v) spec.schemes.push_back(scheme_from_string(s.get<std::string>()));
            } else if (key == "methods") {
                spec.methods.clear();
                for (const auto& m : v) spec.methods.push_back(method_from_string(m.get<std::string>()));
            } else if (key == "trials") spec.trials = v.get<std::uint64_t>();
            else if (key == "seed") {
                if (!v.is_null()) spec.seed = v.get<std::uint64_t>();
            } else if (key == "distance_rule") spec.distance_rule = v.get<std::string>();
            else if (key == "interferer_distance") spec.interferer_distance = v.get<double>();
            else if (key == "mu2") spec.mu2_override = v.get<double>();
            else if (key == "quadrature") spec.quad = quadrature_from_json(v);
            else throw ConfigError("unknown sweep spec key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("sweep spec: ") + e.what());
    }
    return spec;
}

}  // namespace famalab
