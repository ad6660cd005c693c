#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Flat "key = value" text shared by the tableau, Shu-Osher and run-config
// formats. Blank lines and '#' comments are ignored; later keys overwrite
// earlier ones.

namespace ssp::text {

/// 17 significant digits in %g style; "nan", "inf" and "-inf" for the rest.
std::string format_number(double v);
std::string join_numbers(std::span<const double> values, std::string_view sep = " ");

/// Numbers separated by whitespace and/or commas. Throws ParseError.
std::vector<double> parse_numbers(std::string_view s);
double parse_number(std::string_view s);

std::map<std::string, std::string> parse_key_values(std::string_view input);

std::string_view trim(std::string_view s);

}  // namespace ssp::text
