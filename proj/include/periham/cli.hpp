#pragma once

#include <string>
#include <vector>

namespace periham {

// Command-line front end. Exit codes: 0 success, 1 validation or usage
// error, 2 numerical breakdown.
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args);

// "pi", "2pi", "0.5*pi" or a plain real.
double parse_pi_value(const std::string& text);

} // namespace periham
