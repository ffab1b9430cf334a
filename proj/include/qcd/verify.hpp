#pragma once

// The invariant suite behind `qcd verify`: closed forms against the oracle plus
// the structural properties each engine promises (monotone depletion, GGA
// deviation structure, discord nonnegativity, nonlocality bounds).

#include "qcd/measures.hpp"
#include "qcd/oracle.hpp"

#include <cstdint>
#include <vector>

namespace qcd {

struct VerifyOptions {
    int max_n = 8;  // oracle and partition checks run for n <= min(max_n, 10)
    std::uint64_t seed = 1;
    bool inject_fault = false;
    DiscordOptions discord;
    SvetlichnyOptions svetlichny;
};

struct VerifyReport {
    std::vector<IdentityCheck> checks;
    bool passed = true;
};

VerifyReport run_verify_suite(const VerifyOptions& opts);

}  // namespace qcd
