#include "famalab/config_json.hpp"

#include "famalab/errors.hpp"

namespace famalab {

namespace {

template <class T>
T get_as(const nlohmann::json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

int get_int(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
    return get_as<int>(v, key);
}

}  // namespace

void apply_json(NetworkConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("network config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "n_bs_antennas") cfg.n_bs_antennas = get_int(v, key);
        else if (key == "n_interferers") cfg.n_interferers = get_int(v, key);
        else if (key == "n_ports") cfg.n_ports = get_int(v, key);
        else if (key == "fas_size") cfg.fas_size = get_as<double>(v, key);
        else if (key == "path_loss_exp") cfg.path_loss_exp = get_as<double>(v, key);
        else if (key == "sigma") cfg.sigma = get_as<double>(v, key);
        else if (key == "sigma_s") cfg.sigma_s = get_as<double>(v, key);
        else if (key == "sigma_eta") cfg.sigma_eta = get_as<double>(v, key);
        else if (key == "sir_threshold_f") cfg.sir_threshold_f = get_as<double>(v, key);
        else if (key == "sir_threshold_s") cfg.sir_threshold_s = get_as<double>(v, key);
        else if (key == "snr_threshold") cfg.snr_threshold = get_as<double>(v, key);
        else if (key == "distances") cfg.distances = get_as<std::vector<double>>(v, key);
        else throw ConfigError("unknown network config key '" + key + "'");
    }
}

NetworkConfig config_from_json(const nlohmann::json& j) {
    NetworkConfig cfg;
    apply_json(cfg, j);
    return cfg;
}

nlohmann::json config_to_json(const NetworkConfig& cfg) {
    return {{"n_bs_antennas", cfg.n_bs_antennas},
            {"n_interferers", cfg.n_interferers},
            {"n_ports", cfg.n_ports},
            {"fas_size", cfg.fas_size},
            {"path_loss_exp", cfg.path_loss_exp},
            {"sigma", cfg.sigma},
            {"sigma_s", cfg.sigma_s},
            {"sigma_eta", cfg.sigma_eta},
            {"sir_threshold_f", cfg.sir_threshold_f},
            {"sir_threshold_s", cfg.sir_threshold_s},
            {"snr_threshold", cfg.snr_threshold},
            {"distances", cfg.distances}};
}

}  // namespace famalab
