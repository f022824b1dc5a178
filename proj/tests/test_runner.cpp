#include "famalab/errors.hpp"
#include "famalab/figures.hpp"
#include "famalab/runner.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace famalab;

namespace {

SweepSpec small_spec() {
    SweepSpec s;
    s.base.distances = {200, 400, 600, 800};
    s.axis = Axis::Threshold;
    s.values = {10.0, 30.0};
    s.trials = 4000;
    s.seed = 7;
    return s;
}

std::string csv_of(const SweepSpec& s) {
    std::ostringstream os;
    write_csv(run_sweep(s), os);
    return os.str();
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("csv layout") {
    const auto text = csv_of(small_spec());
    CHECK(text.rfind("axis_value,scheme,method,probability,uncertainty,trials,wall_ms\r\n", 0) == 0);
    // header plus 2 values x 2 schemes x 2 methods
    std::size_t lines = 0;
    for (char ch : text) lines += ch == '\n';
    CHECK(lines == 9);
    // unequal distances: s-FAMA analytic fails per row, MC rows still run
    CHECK(text.find(",s_fama,analytic,ERR,,") != std::string::npos);
    CHECK(text.find(",s_fama,mc,0") != std::string::npos);
    CHECK(text.find(",f_fama,analytic,0.") != std::string::npos);
    CHECK(text.find(",4000,\r\n") != std::string::npos);
}

TEST_CASE("reruns are byte identical") {
    auto s = small_spec();
    s.jobs = 1;
    const auto a = csv_of(s);
    s.jobs = 3;
    CHECK(csv_of(s) == a);
}

TEST_CASE("manifest contents") {
    const auto r = run_sweep(small_spec());
    CHECK(r.manifest.contains("software"));
    CHECK(r.manifest["points"].size() == 2);
    CHECK(r.manifest["points"][0]["derived"].contains("Omega"));
    CHECK(r.manifest["spec"]["seed"] == 7);
    CHECK_FALSE(r.manifest["row_notes"].empty());
}

TEST_CASE("spec validation") {
    auto s = small_spec();
    s.seed.reset();
    CHECK_THROWS_AS(s.validate(), ConfigError);
    CHECK_THROWS_AS(run_sweep(s), ConfigError);
    s.methods = {Method::Analytic};
    CHECK_NOTHROW(s.validate());
    CHECK_THROWS_AS(sweep_spec_from_json({{"axes", "K"}}), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from_json({{"axis", "Z"}}), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from_json({{"trials", "many"}}), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from_json({{"quadrature", {{"kernel", "fast"}}}}), ConfigError);
}

TEST_CASE("json roundtrip") {
    auto s = small_spec();
    s.axis = Axis::U;
    s.values = {1, 2, 3};
    s.distance_rule = "linear";
    s.interferer_distance = 150.0;
    s.quad.kernel = BesselKernel::ScaledBessel;
    const auto back = sweep_spec_from_json(sweep_spec_to_json(s));
    CHECK(back.axis == Axis::U);
    CHECK(back.values == s.values);
    CHECK(back.seed == s.seed);
    CHECK(back.distance_rule == "linear");
    CHECK(back.quad.kernel == BesselKernel::ScaledBessel);
    CHECK(sweep_spec_to_json(back) == sweep_spec_to_json(s));
}

TEST_CASE("axis configs") {
    auto s = small_spec();
    auto c = config_at(s, 12.5);
    CHECK(c.sir_threshold_f == 12.5);
    CHECK(c.sir_threshold_s == 12.5);
    CHECK(c.snr_threshold == 12.5);
    s.axis = Axis::U;
    c = config_at(s, 3);
    CHECK(c.distances == std::vector<double>{200, 400, 400, 400});
    s.distance_rule = "linear";
    s.interferer_distance = 100.0;
    c = config_at(s, 2);
    CHECK(c.distances == std::vector<double>{200, 300, 400});
    s.axis = Axis::K;
    CHECK_THROWS_AS(config_at(s, 2.5), ConfigError);
}

TEST_CASE("single-port rows use the closed forms") {
    auto s = small_spec();
    s.axis = Axis::K;
    s.values = {1};
    s.base.distances = {100, 100, 100, 100};
    s.base.sir_threshold_f = s.base.sir_threshold_s = 0.3;
    s.methods = {Method::Analytic};
    s.schemes = {Scheme::FFama, Scheme::SFama, Scheme::NoiseLimited};
    const auto r = run_sweep(s);
    for (const auto& row : r.rows) CHECK_FALSE(row.failed);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333");
    CHECK(format_number(1.5e-12) == "1.5e-12");
}

TEST_CASE("figure files") {
    FigureOptions o;
    o.trials = 2000;
    o.mc = true;
    o.analytic = false;
    const auto dir = std::filesystem::temp_directory_path() / "famalab_fig_test";
    std::filesystem::remove_all(dir);
    const auto files = write_figure("fig6", dir, o);
    CHECK(files.size() >= 3);
    CHECK(std::filesystem::exists(dir / "fig6_manifest.json"));
    for (const auto& f : files) CHECK(std::filesystem::file_size(f) > 0);
    CHECK_THROWS_AS(figure_parts("fig9", o), ConfigError);
    for (const auto& n : figure_names()) CHECK_FALSE(figure_parts(n, o).empty());
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
