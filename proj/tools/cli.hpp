#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dhp::cli {

/// Exit codes: 0 success, 1 failure, 2 table rounding discrepancy, 64 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitDiscrepancy = 2;
inline constexpr int kExitUsage = 64;

enum class OutputFormat { kMarkdown, kCsv, kJson };

struct CliConfig {
  std::string subcommand;
  OutputFormat format = OutputFormat::kMarkdown;
  std::uint64_t seed = 1;
  std::string database_path;  // empty: DHP_DB, then the embedded database
  int verbosity = 0;
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dhp::cli
