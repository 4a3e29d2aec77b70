#pragma once

#include <string>
#include <string_view>

namespace pwmlp {

/// Shortest decimal that parses back to exactly v ('.' separator, no locale).
std::string format_double(double v);

/// Locale-independent parse of a whole field, surrounding blanks allowed.
/// Returns false on malformed input or trailing text.
bool parse_double(std::string_view text, double& out) noexcept;

}  // namespace pwmlp
