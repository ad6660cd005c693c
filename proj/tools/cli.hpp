#pragma once

#include <iosfwd>
#include <string_view>

namespace ssp::cli {

/// Runs the command line in-process. Exit codes: 0 success, 1 runtime
/// failure (unreadable file, blow-up in a convergence run), 2 usage or
/// validation error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Numbers with + - * / parentheses and sqrt(), e.g. "1/sqrt(2)".
double parse_scalar_expression(std::string_view text);

}  // namespace ssp::cli
