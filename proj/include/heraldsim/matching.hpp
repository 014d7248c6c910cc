#pragma once

#include <cstdint>
#include <vector>

namespace heraldsim {

// Exact minimum-weight perfect matching on a complete graph with n even,
// given a symmetric non-negative integer weight matrix.  Returns mate[i] for
// every vertex.  Deterministic (no randomized pivoting).
std::vector<int> min_weight_perfect_matching(
    const std::vector<std::vector<int64_t>>& w);

// Exhaustive reference matcher for validation (n <= 12).
std::vector<int> brute_force_min_perfect(
    const std::vector<std::vector<int64_t>>& w);

int64_t matching_weight(const std::vector<std::vector<int64_t>>& w,
                        const std::vector<int>& mate);

}  // namespace heraldsim
