#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hlawka/types.hpp"

namespace hlawka::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kNumericError = 2;
inline constexpr int kVerificationFailed = 3;

// Runs one command line (args excludes the program name). Results go to out unless --output
// names a file; diagnostics and usage go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "a", "a+bi", "a-bi", "bi" (no spaces). DomainError on anything else.
Complex parse_complex(std::string_view text);

// (library operation, subcommand) pairs; each operation appears once.
const std::vector<std::pair<std::string, std::string>>& operation_map();

}  // namespace hlawka::cli
