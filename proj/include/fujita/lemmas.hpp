#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fujita/semilinear.hpp"

namespace fujita {

/// Documented check tags, in report order.
const std::vector<std::string>& lemma_tags();

/// Splits "a,b, c" into tags; an empty string gives an empty selection.
std::vector<std::string> parse_selection(const std::string& csv);

/// Runs each selected check on the config's symbol, grid and initial data.
/// Result: {"checks": {tag: report}, "pass": bool}; a check that throws is
/// reported with its error and counts as failed. Unknown tags throw ConfigError
/// before anything runs. `seed` drives the randomized checks.
nlohmann::json verify_lemmas(const SimConfig& config, const std::vector<std::string>& selection,
                             std::uint64_t seed = 12345);

/// Randomized even nonincreasing centered array of length 2m + 1.
std::vector<double> random_radial_profile(std::uint64_t& state, std::size_t m);

struct RadialMonotoneSummary {
  int cases = 0;
  int passed = 0;
  nlohmann::json to_json() const;
};

/// Convolves `cases` random pairs of even nonincreasing profiles.
RadialMonotoneSummary radial_monotone_cases(int cases, std::uint64_t seed);

}  // namespace fujita
