#pragma once

#include <string>
#include <string_view>

namespace oschar {

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double value);

/// Locale-independent strict parse; throws std::invalid_argument.
double parse_double(std::string_view text);

}  // namespace oschar
