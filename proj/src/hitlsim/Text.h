#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hitlsim {

// Canonical number formatting. Every file format and report uses these so
// that serialization is byte-stable and parse(format(x)) == x.

// Fixed three decimals, e.g. 12.5 -> "12.500". Used for timestamps.
std::string format_fixed3(double value);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

// Round to six significant digits; report values pass through this before
// being rendered so both JSON and table forms agree.
double round_sig6(double value);
std::string format_sig6(double value);

// Snap a timestamp to the millisecond grid used by canonical log output,
// i.e. the double that format_fixed3 of it parses back to.
double quantize_ms(double seconds);

// strtod over the full string view; nullopt on trailing garbage or empty.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

}  // namespace hitlsim
