#pragma once

#include <cstdint>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

namespace logwalk::cli {

/// Seed used when neither --seed nor LOGWALK_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20240917;

enum ExitCode : int {
  kSuccess = 0,
  kInternal = 1,
  kBadInput = 2,
  kPrecondition = 3,
  kBudget = 4,
  kNumerical = 5,
};

/// Runs the command line `argv[0] subcommand flags...`. The primary result
/// goes to --out (or `out`); key=value summary lines go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code(const std::exception& e) noexcept;

}  // namespace logwalk::cli
