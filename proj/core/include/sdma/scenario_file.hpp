#ifndef SDMA_SCENARIO_FILE_HPP
#define SDMA_SCENARIO_FILE_HPP

#include <iosfwd>
#include <string>

#include "sdma/sim_harness.hpp"

namespace sdma {

/// Parses a custom scenario description. Line-based `key = value` file,
/// '#' comments; one `scheme = ...` line per scheme with space-separated
/// `key=value` tokens (see the commented examples under configs/).
/// Estimation noise is given as a multiple of sigma_N^2. Unset fields
/// keep their defaults. Parse failures throw std::runtime_error naming
/// the offending line and token.
Scenario load_custom_scenario(const std::string& path);
Scenario parse_scenario(std::istream& in, const std::string& source_name);

}  // namespace sdma

#endif  // SDMA_SCENARIO_FILE_HPP
