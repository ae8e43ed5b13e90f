#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plenoptic/cli/config.hpp"

namespace plenoptic::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,       // bad flags or missing required input
  kExitInput = 3,       // unreadable file, schema violation, invalid value
  kExitValidation = 4,  // --assert and the knee property does not hold
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flags, then the --config file, then $PLENOPTIC_OUTPUT_DIR, then built-in
// defaults, in order of precedence. `args` excludes the program name.
// Returns nullopt (after printing usage to `out`) for --help.
std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args,
                                            std::ostream& out);

// Runs one resolved configuration. Throws UsageError, ValidationFailure or
// plenoptic::Error.
void run(const RunConfig& config, std::ostream& out);

// Full entry point: parse, run, map failures to exit codes with a one-line
// message on `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plenoptic::cli
