#pragma once

#include <string>
#include <vector>

namespace genus1 {

/// Locale-independent shortest-of-%g style rendering with `digits`
/// significant digits ("." separator, no trailing zeros).
std::string format_number(double v, int digits = 12);

/// Round-trip exact rendering (17 significant digits).
std::string format_exact(double v);

/// "[c0, c1, ...]" with format_number entries.
std::string format_list(const std::vector<double>& values, int digits = 12);

/// Parses a double with the "C" locale; throws ParseError.
double parse_number(const std::string& text);

}  // namespace genus1
