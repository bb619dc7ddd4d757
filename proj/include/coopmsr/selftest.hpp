#pragma once

#include <cstdint>
#include <ostream>

namespace coopmsr {

struct SelftestOptions {
    bool blocks_only = false;
    bool full_grid = false;
    std::uint64_t seed = 1;
};

/// Runs the built-in verification suites (building blocks, pair map, MDS
/// checks, repair against the decode oracle, transcript accounting), printing
/// one line per check. Returns true iff everything passed.
bool run_selftest(const SelftestOptions& opt, std::ostream& out);

}  // namespace coopmsr
