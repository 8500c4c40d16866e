#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cyclepack/cycles.hpp"
#include "cyclepack/graph.hpp"

namespace cyclepack {

struct OracleOptions {
    // Stop as soon as a packing of this size is found.
    std::optional<int> limit;
    // With a limit, only decide "max >= limit": subtrees that cannot reach
    // the limit are pruned, so a result without reached_limit certifies
    // max < limit exactly, but the returned packing is just a witness, not
    // necessarily maximum.
    bool decision_only = false;
    // Guards against runaway instances: exceeded budgets yield an explicit
    // "unavailable" result, never a heuristic answer.
    std::uint64_t node_budget = 20'000'000;
    std::size_t cycle_cap = 2'000'000;
};

struct OracleResult {
    bool available = false;
    std::string unavailable_reason;
    CyclePacking packing;
    std::uint64_t nodes = 0;     // branch-and-bound nodes explored
    bool reached_limit = false;  // stopped early at opts.limit

    int size() const { return packing.size(); }
};

// Maximum-cardinality family of vertex-disjoint C_ell copies, by cycle
// enumeration plus branch-and-bound set packing (greedy lower bound,
// fractional vertex-capacity upper bound, connected-component split).
OracleResult max_disjoint_cycles_exact(const Graph& g, int ell, OracleOptions opts = {});

}  // namespace cyclepack
