#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace dclust {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Parses the complete string as a double; nullopt on trailing garbage.
/// Accepts "nan"/"inf" spellings so callers can report them precisely.
std::optional<double> parse_double(std::string_view s);

std::string_view trim(std::string_view s);

}  // namespace dclust
