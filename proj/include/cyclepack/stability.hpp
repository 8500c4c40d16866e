#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclepack/graph.hpp"
#include "cyclepack/rational.hpp"

namespace cyclepack {

struct StabilityParams {
    Rational alpha;
    Rational beta;

    // How the size windows (alpha ± beta) n are rounded to integers: either
    // compare |A| against the exact rational bounds (both ends inclusive),
    // or against the floored bounds. Reports carry the mode used.
    enum class SizeRounding { floor_inclusive, exact };
    SizeRounding rounding = SizeRounding::floor_inclusive;

    void validate() const;
};

struct ClauseResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    double margin = 0.0;  // signed; >= 0 iff pass under the clause's direction
};

struct StabilityCertificate {
    std::vector<VertexId> side_a;
    std::vector<VertexId> side_b;

    int a_size = 0;
    int b_size = 0;
    int min_cross_degree = 0;
    int deficient_a = 0;  // A-vertices with degree into B below |B| - beta n
    int deficient_b = 0;
    long long edges_inside_b = 0;

    std::vector<ClauseResult> clauses;
    bool all_pass = false;
    std::string rounding_mode;

    std::string to_json_string() const;
};

// Evaluates the stability clauses for the partition (A, V \ A): size windows
// for both sides, min degree of the cross bipartite subgraph >= alpha n / 4,
// at most beta n deficient vertices on each side, and e(G[B]) <= beta n^2.
// Integer quantities are compared with the rational thresholds exactly.
StabilityCertificate check_partition(const Graph& g, const std::vector<VertexId>& side_a,
                                     const StabilityParams& params);

enum class StabilitySearchMode { exhaustive, heuristic };

struct StabilitySearchOptions {
    int exhaustive_vertex_limit = 20;
    long long max_moves = 100000;  // hill-climb step cap
};

// Exhaustive mode enumerates all candidate A-sides within the size window in
// lexicographic order and returns the first passing certificate (sound and
// complete). Heuristic mode seeds A with the ceil(alpha n) highest-degree
// vertices and hill-climbs single-vertex moves on a weighted violation
// score; it returns only checked certificates, so "none" is advisory.
std::optional<StabilityCertificate> find_stable_partition(const Graph& g,
                                                          const StabilityParams& params,
                                                          StabilitySearchMode mode,
                                                          StabilitySearchOptions opts = {});

}  // namespace cyclepack
