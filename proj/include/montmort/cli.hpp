// Command-line frontend. run() is the whole program minus main(), so tests
// can drive it with in-memory streams.
#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "montmort/combinatorics.hpp"
#include "montmort/decimal.hpp"

namespace montmort::cli {

enum class OutputMode { Plain, Json, Csv };

struct OutputFormat {
  OutputMode mode = OutputMode::Plain;
  /// Places after the decimal point.
  unsigned digits = 20;
  Rounding rounding = Rounding::HalfEven;
  /// Also print the lowest-terms fraction.
  bool exact = false;
};

/// Plain/CSV: the decimal, then "p/q" on a second line when format.exact.
/// JSON: {"exact": "p/q" | null, "decimal": ..., "digits": ...} fragment.
std::string render_rational(const Rational& value, const OutputFormat& format);

/// Exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,         // unknown command, malformed or out-of-range argument
  kConfig = 3,        // invalid deck / non-terminating treize game
  kBudget = 4,        // treize state budget exceeded
  kRoundCap = 5,      // simulated deal hit the round cap
  kIo = 6,            // could not write a requested file
  kInternal = 1,
};

/// `args` excludes the program name. Data goes to `out` only on success;
/// diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace montmort::cli
