#pragma once

#include <cstdint>
#include <iosfwd>

namespace dhp::cli {

enum class SelftestDepth { kQuick, kFull };

/// Runs the invariant suites of every module; prints one line per suite.
/// Returns true iff all pass.
bool run_selftest(SelftestDepth depth, std::uint64_t seed, std::ostream& out);

}  // namespace dhp::cli
