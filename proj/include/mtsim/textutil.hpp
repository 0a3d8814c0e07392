#pragma once

#include <string>
#include <string_view>

namespace mtsim {

/// Shortest decimal text that round-trips the double exactly.
std::string format_double(double value);

/// Parse a full token as a finite double. Returns false on any leftover
/// characters, empty input, or non-finite results (inf/nan rejected).
bool parse_double(std::string_view token, double& out);

std::string to_upper(std::string_view s);

}  // namespace mtsim
