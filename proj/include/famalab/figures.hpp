#pragma once

#include "famalab/runner.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace famalab {

struct FigureOptions {
    std::uint64_t trials = 200'000;
    std::uint64_t seed = 20240601;
    int jobs = 1;
    bool mc = true;
    bool analytic = true;
    bool timing = false;
    QuadratureSettings quad;
};

/// One sweep of a figure; `tag` names its output files.
struct FigurePart {
    std::string tag;
    SweepSpec spec;
};

std::vector<std::string> figure_names();

/// Sweeps that make up a figure (fig2 .. fig6).
std::vector<FigurePart> figure_parts(const std::string& name, const FigureOptions& opts);

/// Runs a figure and writes one CSV per (part, scheme, method) curve plus
/// `<name>_manifest.json`. Returns the written paths.
std::vector<std::filesystem::path> write_figure(const std::string& name,
                                                const std::filesystem::path& out_dir,
                                                const FigureOptions& opts);

}  // namespace famalab
