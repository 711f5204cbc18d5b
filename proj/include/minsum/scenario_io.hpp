// JSON scenario files. L = inf is spelled "inf"; every other number is a
// JSON number and is written with 17 significant digits.
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "minsum/scenario.hpp"

namespace minsum {

/// Throws ParseError on malformed JSON or missing/ill-typed fields, and the
/// validation errors of Scenario::validate on inconsistent content.
Scenario parse_scenario(std::string_view text);
Scenario read_scenario_file(const std::string& path);

std::string serialize_scenario(const Scenario& scenario);

}  // namespace minsum
