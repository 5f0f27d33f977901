#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specrig/numeric.hpp"

namespace specrig::cli {

enum class Format { json, csv, text };

/// Options shared by every command.
struct RunConfig {
  std::string command;
  double tol = kDefaultTol;
  std::optional<std::string> output;
  std::optional<Format> format;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

/// Default tolerance: SPECRIG_TOL when set and valid, else 1e-9.
/// Throws DomainError on an unparsable or non-positive value.
double default_tolerance();

/**
 * Runs one command. `args` excludes the program name. Results go to `out`
 * (or the --output file); usage errors and input errors go to `err`.
 * Returns the process exit code: 0 success, 1 usage or input error,
 * 2 / 3 for the rigidity verdicts hypothesis_failed / reconstruction_failed.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specrig::cli
