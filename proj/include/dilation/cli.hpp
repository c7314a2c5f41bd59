#pragma once

#include <iosfwd>

namespace dilation::cli {

/// Exit codes of the command-line tool.
enum Exit : int
{
  kOk = 0,
  kNotAdmissible = 1,
  kUnknown = 2,
  kToleranceBreach = 3,
  kNeedsSimilarity = 4,
  kParseError = 64,
  kInputError = 65,
  kNumericFailure = 70,
};

/// Runs one subcommand; stdout carries the primary report.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dilation::cli
