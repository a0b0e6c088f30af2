#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fujita/fields.hpp"

namespace fujita {

/// One row per lattice point: coordinates x_1..x_N, then the value.
void write_field_csv(const std::filesystem::path& path, const Field& field);
/// Reads a full-lattice CSV written by write_field_csv and recovers its grid.
Field read_field_csv(const std::filesystem::path& path);

/// Rows for the upper half-lattice only (x_N > 0), same column layout.
void write_halfspace_csv(const std::filesystem::path& path, const HalfSpaceData& half);
/// Reads values on the upper half of `grid`; missing points are an error.
HalfSpaceData read_halfspace_csv(const std::filesystem::path& path, const Grid& grid);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace fujita
