#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclepack/graph.hpp"

namespace cyclepack {

// An ell-cycle as an ordered vertex list; consecutive entries (cyclically)
// must be edges of the host graph.
struct Cycle {
    std::vector<VertexId> vertices;

    int length() const { return static_cast<int>(vertices.size()); }
    bool valid_in(const Graph& g) const;

    // Rotation/reflection-invariant form: minimal vertex first, then the
    // smaller of its two cycle neighbours.
    Cycle canonical() const;

    bool operator==(const Cycle& o) const { return vertices == o.vertices; }
};

struct CyclePacking {
    int ell = 0;
    std::vector<Cycle> cycles;

    int size() const { return static_cast<int>(cycles.size()); }
    std::vector<VertexId> covered_vertices() const;
};

struct CycleEnumeration {
    std::vector<Cycle> cycles;
    bool truncated = false;  // cap reached before the enumeration finished
};

// All copies of C_ell in g, each once, in canonical form, lexicographic
// order. With a cap the result is a prefix and `truncated` is set.
CycleEnumeration enumerate_cycles(const Graph& g, int ell,
                                  std::optional<std::size_t> cap = std::nullopt);

struct PackingDefect {
    enum class Kind { wrong_length, repeated_vertex, missing_edge, shared_vertex };
    Kind kind;
    int cycle_index = -1;
    int other_cycle_index = -1;  // shared_vertex only
    VertexId u = -1;
    VertexId v = -1;
    std::string describe() const;
};

struct PackingReport {
    std::vector<PackingDefect> defects;
    bool ok() const { return defects.empty(); }
};

// Reports every defect instead of throwing: wrong cycle length, repeated
// vertices, consecutive pairs that are not edges of g, and vertices shared
// between cycles.
PackingReport verify_packing(const Graph& g, const CyclePacking& p);

// C(n, ell) * (ell-1)!/2 * p^ell, the expected number of C_ell copies in
// G(n, p).
double expected_cycle_count(int n, int ell, double p);

// First C_ell found among vertices with active[v] != 0 (active empty means
// all), by depth-first path search from each start vertex in index order.
// `budget` caps visited search-tree nodes; on exhaustion returns nullopt
// with *budget == 0, which is indistinguishable from absence by design of
// the callers (they report, never assert, absence).
std::optional<Cycle> find_one_cycle(const Graph& g, int ell,
                                    const std::vector<char>& active,
                                    std::uint64_t* budget = nullptr);

}  // namespace cyclepack
