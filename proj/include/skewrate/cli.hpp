#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "skewrate/verify.hpp"

namespace skewrate {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailure = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

/// Germ file: one `p = ...` and one `q = ...` line in any order. Text after
/// `#` is ignored. Throws ParseError (position is the byte offset in `text`)
/// or DomainError when the pair is not a germ.
SkewGerm parse_germ_file(std::string_view text);

/// 1 when any check failed, else 3 when the iteration hit a resource guard, else 0.
int exit_code(const VerificationReport& rep);
/// 1 when any check failed, else 0.
int exit_code(const FuzzSummary& summary);

/// Runs one command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skewrate
