// The acceptance suite: twelve criteria, each printed as a single pass/fail
// line with its measured quantities.  Output is byte-identical for a fixed
// seed (no timestamps or timings are printed; time limits are enforced
// silently and only flip the verdict).
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace phiv::acceptance {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CriterionResult> run_all(std::uint64_t seed);

// prints one line per criterion plus a summary; returns true iff all pass
bool run(std::uint64_t seed, std::ostream& out);

} // namespace phiv::acceptance
