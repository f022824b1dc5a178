#include "famalab/analytic.hpp"
#include "famalab/config_json.hpp"
#include "famalab/errors.hpp"
#include "famalab/montecarlo.hpp"
#include "famalab/netmodel.hpp"
#include "famalab/runner.hpp"
#include "famalab/specfun.hpp"
#include "famalab/validate.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace famalab;

namespace {

// JSON crosses the boundary as text; the Python side wraps it with json.loads/dumps.
std::string dump(const nlohmann::json& j) { return j.dump(); }
nlohmann::json parse(const std::string& s) {
    try {
        return nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

PYBIND11_MODULE(_famalab, m) {
    m.doc() = "Outage analysis of cell-free MRT networks with FAMA users";

    auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    (void)config_error;
    (void)numerical;

    py::class_<NetworkConfig>(m, "NetworkConfig")
        .def(py::init<>())
        .def_readwrite("n_bs_antennas", &NetworkConfig::n_bs_antennas)
        .def_readwrite("n_interferers", &NetworkConfig::n_interferers)
        .def_readwrite("n_ports", &NetworkConfig::n_ports)
        .def_readwrite("fas_size", &NetworkConfig::fas_size)
        .def_readwrite("path_loss_exp", &NetworkConfig::path_loss_exp)
        .def_readwrite("sigma", &NetworkConfig::sigma)
        .def_readwrite("sigma_s", &NetworkConfig::sigma_s)
        .def_readwrite("sigma_eta", &NetworkConfig::sigma_eta)
        .def_readwrite("sir_threshold_f", &NetworkConfig::sir_threshold_f)
        .def_readwrite("sir_threshold_s", &NetworkConfig::sir_threshold_s)
        .def_readwrite("snr_threshold", &NetworkConfig::snr_threshold)
        .def_readwrite("distances", &NetworkConfig::distances)
        .def("validate", &NetworkConfig::validate)
        .def("to_json", [](const NetworkConfig& c) { return dump(config_to_json(c)); })
        .def_static("from_json", [](const std::string& s) { return config_from_json(parse(s)); });

    py::class_<DerivedParams>(m, "DerivedParams")
        .def_readonly("mu2", &DerivedParams::mu2)
        .def_readonly("omega", &DerivedParams::omega)
        .def_readonly("iota", &DerivedParams::iota)
        .def_readonly("sigma_I2", &DerivedParams::sigma_I2)
        .def_readonly("Omega", &DerivedParams::Omega)
        .def_readonly("phi", &DerivedParams::phi)
        .def_readonly("theta_f", &DerivedParams::theta_f)
        .def_readonly("theta_s", &DerivedParams::theta_s)
        .def_readonly("a", &DerivedParams::a)
        .def_readonly("b", &DerivedParams::b)
        .def_readonly("nu_scale", &DerivedParams::nu_scale)
        .def_readonly("n_ports", &DerivedParams::n_ports)
        .def_readonly("noise_tau", &DerivedParams::noise_tau);

    m.def("derive", &derive, py::arg("cfg"), py::arg("mu2") = py::none());
    m.def("correlation_mu2", &correlation_mu2, py::arg("n_ports"), py::arg("fas_size"));
    m.def("mean_ratio", &mean_ratio);
    m.def("variance_ratio_approx", &variance_ratio_approx);
    m.def("marcum_q", &specfun::marcum_q, py::arg("nu"), py::arg("a"), py::arg("b"));
    m.def("reg_lower_gamma", &specfun::reg_lower_gamma);

    py::enum_<BesselKernel>(m, "BesselKernel")
        .value("ANGULAR", BesselKernel::Angular)
        .value("SCALED_BESSEL", BesselKernel::ScaledBessel)
        .value("UNSCALED_BESSEL", BesselKernel::UnscaledBessel);

    py::class_<QuadratureSettings>(m, "QuadratureSettings")
        .def(py::init<>())
        .def_readwrite("rel_tol", &QuadratureSettings::rel_tol)
        .def_readwrite("abs_tol", &QuadratureSettings::abs_tol)
        .def_readwrite("envelope_cut", &QuadratureSettings::envelope_cut)
        .def_readwrite("max_subdivisions", &QuadratureSettings::max_subdivisions)
        .def_readwrite("panels", &QuadratureSettings::panels)
        .def_readwrite("jobs", &QuadratureSettings::jobs)
        .def_readwrite("kernel", &QuadratureSettings::kernel);

    py::class_<AnalyticResult>(m, "AnalyticResult")
        .def_readonly("probability", &AnalyticResult::probability)
        .def_readonly("error", &AnalyticResult::error)
        .def_readonly("bracket_min", &AnalyticResult::bracket_min)
        .def_readonly("bracket_max", &AnalyticResult::bracket_max)
        .def_readonly("evaluations", &AnalyticResult::evaluations)
        .def_readonly("warnings", &AnalyticResult::warnings);

    const auto q = py::arg("quad") = QuadratureSettings{};
    m.def("outage_f_fama", &outage_f_fama, py::arg("params"), q);
    m.def("outage_f_fama_k1", &outage_f_fama_k1, py::arg("params"), q);
    m.def("outage_s_fama", &outage_s_fama, py::arg("params"), q);
    m.def("outage_s_fama_k1", &outage_s_fama_k1, py::arg("params"), q);
    m.def("outage_snr", &outage_snr, py::arg("params"), q);
    m.def("outage_snr_k1", &outage_snr_k1, py::arg("params"));
    m.def("kappa_f", &kappa_f);
    m.def("kappa_s", &kappa_s);

    py::enum_<Scheme>(m, "Scheme")
        .value("F_FAMA", Scheme::FFama)
        .value("S_FAMA", Scheme::SFama)
        .value("NOISE_LIMITED", Scheme::NoiseLimited);

    py::class_<OutageEstimate>(m, "OutageEstimate")
        .def_readonly("probability", &OutageEstimate::probability)
        .def_readonly("trials", &OutageEstimate::trials)
        .def_readonly("outages", &OutageEstimate::outages)
        .def_readonly("std_error", &OutageEstimate::std_error)
        .def_readonly("scheme", &OutageEstimate::scheme)
        .def_readonly("seed", &OutageEstimate::seed)
        .def_readonly("low_precision", &OutageEstimate::low_precision);

    m.def(
        "outage_curve_mc",
        [](const NetworkConfig& cfg, Scheme scheme, const std::vector<double>& thresholds,
           std::uint64_t trials, std::uint64_t seed, int jobs, std::optional<double> mu2) {
            McOptions o;
            o.trials = trials;
            o.seed = seed;
            o.jobs = jobs;
            const auto p = derive(cfg, mu2);
            py::gil_scoped_release release;
            return outage_curve_mc(cfg, p, scheme, thresholds, o);
        },
        py::arg("cfg"), py::arg("scheme"), py::arg("thresholds"), py::arg("trials"), py::arg("seed"),
        py::arg("jobs") = 1, py::arg("mu2") = py::none());

    m.def(
        "run_sweep",
        [](const std::string& spec_json) {
            const SweepSpec spec = sweep_spec_from_json(parse(spec_json));
            SweepResult r;
            {
                py::gil_scoped_release release;
                r = run_sweep(spec);
            }
            std::ostringstream os;
            write_csv(r, os);
            return py::make_tuple(os.str(), dump(r.manifest));
        },
        py::arg("spec_json"), "Runs a sweep; returns (csv_text, manifest_json).");

    m.def(
        "validate",
        [](const NetworkConfig& cfg, std::uint64_t trials, std::uint64_t seed, int jobs) {
            ValidateOptions o;
            o.trials = trials;
            o.seed = seed;
            o.jobs = jobs;
            ValidationReport r;
            {
                py::gil_scoped_release release;
                r = validate(cfg, o);
            }
            return dump(r.to_json());
        },
        py::arg("cfg"), py::arg("trials") = 1'000'000, py::arg("seed") = 20240601, py::arg("jobs") = 1);
}
