#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dashsim {

// Shortest decimal form that round-trips to the same double
// (std::to_chars). Every serializer goes through this so that equal inputs
// produce byte-identical files on every platform.
std::string format_double(double x);

// Strict parsers: the whole token must be consumed. Throw
// std::invalid_argument naming the offending token.
double parse_double(std::string_view token);
long long parse_int(std::string_view token);

// Splits on the given delimiter, trimming ASCII whitespace from each piece;
// empty pieces are dropped.
std::vector<std::string> split_list(std::string_view text, char delim);

std::string_view trim(std::string_view s);

}  // namespace dashsim
