#pragma once

#include "famalab/netmodel.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace famalab {

struct CheckResult {
    std::string group;  // specfun, netmodel, channel, outage
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    nlohmann::json to_json() const;
};

struct ValidateOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 20240601;
    int jobs = 1;
    std::optional<double> mu2_override;
    bool include_identities = true;
    bool include_distributions = true;
    bool include_outage = true;
};

/// Runs the invariant battery for `cfg`: special-function identities,
/// derived-parameter ranges, sampled moments and correlations, and Monte
/// Carlo against the analytic evaluators. Single-port configurations only
/// compare closed forms with Monte Carlo.
ValidationReport validate(const NetworkConfig& cfg, const ValidateOptions& opts = {});

/// Individual groups, also used by the acceptance tests.
std::vector<CheckResult> check_specfun_identities();
std::vector<CheckResult> check_netmodel(const NetworkConfig& cfg, const std::optional<double>& mu2);
std::vector<CheckResult> check_distributions(const NetworkConfig& cfg, const ValidateOptions& opts);
std::vector<CheckResult> check_outage(const NetworkConfig& cfg, const ValidateOptions& opts);

}  // namespace famalab
