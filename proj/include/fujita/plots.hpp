#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace fujita {

/// gnuplot scripts with their data inlined as datablocks.
std::string sup_norm_plot_script(const nlohmann::json& result);
std::string probe_plot_script(const nlohmann::json& result);
std::string phase_plot_script(const std::string& phase_csv);

/// `artifact` is a result.json, a phase.csv, or a directory holding either.
/// Writes *.plot files into `out_dir` and returns their paths.
/// Throws std::runtime_error when no artifact is found.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& artifact,
                                              const std::filesystem::path& out_dir);

}  // namespace fujita
