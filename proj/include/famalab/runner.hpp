#pragma once

#include "famalab/analytic.hpp"
#include "famalab/montecarlo.hpp"
#include "famalab/netmodel.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace famalab {

enum class Axis { Threshold, N, K, W, U };
enum class Method { MC, Analytic };

std::string to_string(Axis a);
std::string to_string(Method m);
Axis axis_from_string(const std::string& s);
Method method_from_string(const std::string& s);

struct SweepSpec {
    NetworkConfig base;
    Axis axis = Axis::Threshold;
    std::vector<double> values;
    std::vector<Scheme> schemes{Scheme::FFama, Scheme::SFama};
    std::vector<Method> methods{Method::MC, Method::Analytic};
    std::uint64_t trials = 1'000'000;
    std::optional<std::uint64_t> seed;  // required when MC is requested
    /// U axis only: "equal" puts every interferer at `interferer_distance`
    /// (default distances[1]); "linear" at r0 + i * interferer_distance.
    std::string distance_rule = "equal";
    std::optional<double> interferer_distance;
    std::optional<double> mu2_override;
    QuadratureSettings quad;
    int jobs = 1;
    bool timing = false;  // fill wall_ms (breaks byte-identical reruns)

    /// Throws ConfigError on inconsistent specs.
    void validate() const;
};

struct SweepRow {
    double axis_value = 0.0;
    Scheme scheme = Scheme::FFama;
    Method method = Method::MC;
    double probability = 0.0;
    double uncertainty = 0.0;  // MC standard error or quadrature error estimate
    std::uint64_t trials = 0;  // 0 for analytic rows
    double wall_ms = 0.0;
    bool failed = false;
    bool low_precision = false;
    std::string message;  // error or warning text
};

struct SweepResult {
    std::vector<SweepRow> rows;
    nlohmann::json manifest;
    bool timing = false;
};

/// Config used at one axis value. Threshold values set all three gammas.
NetworkConfig config_at(const SweepSpec& spec, double value);

/// Runs every (value, scheme, method) combination. Evaluator failures are
/// recorded in the row (failed = true) instead of aborting the sweep.
SweepResult run_sweep(const SweepSpec& spec);

/// RFC-4180 CSV with header
/// axis_value,scheme,method,probability,uncertainty,trials,wall_ms.
/// Failed rows carry ERR as probability.
void write_csv(const SweepResult& result, std::ostream& os);

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
nlohmann::json sweep_spec_to_json(const SweepSpec& spec);
nlohmann::json quadrature_to_json(const QuadratureSettings& q);
nlohmann::json derived_to_json(const DerivedParams& p);

/// Formats with 10 significant digits.
std::string format_number(double v);

}  // namespace famalab
