#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclepack/cycles.hpp"
#include "cyclepack/generators.hpp"
#include "cyclepack/graph.hpp"

namespace cyclepack {

// Engineering constants of the packing pipelines. The shipped defaults are
// pilot-calibrated for desk-scale instances; profile `paper(ell)` restores
// the stated asymptotic constants (which make several preconditions vacuous
// or unattainable at small n).
struct PackerConfig {
    int ell = 3;

    // High-degree split: V' = vertices of degree >= n / high_degree_divisor.
    double high_degree_divisor = 64;

    // Star family interface: leaves per star in [ceil(eps*m), floor(eps*sqrt(n))],
    // target sum of squared leaf counts star_s * eps^2 * n * m.
    double leaf_eps = 0.6;
    int star_s = 1;

    // Degree hypotheses (delta >= m always enforced where stated; the
    // maximum-degree and range hypotheses are waivable at desk scale).
    double max_degree_gamma = 1.0 / 32.0;
    bool enforce_degree_hypotheses = false;

    // Odd top range: rounds of G(n, q) with q = round_q_constant * log n / m^2,
    // anchors of ceil(m / anchor_size_divisor) vertices, A* threshold
    // m / astar_degree_divisor, DRC sample max(ceil(m/(8 ell)), astar_sample_min).
    double round_q_constant = 250.0;
    double anchor_size_divisor = 24.0;
    double astar_degree_divisor = 16.0;
    int astar_sample_min = 32;
    // Structures attempted per round = ceil(s * round_overbuild); the plan's
    // s is the per-round cycle target.
    double round_overbuild = 2.0;
    double b_avail_min_fraction = 0.0;

    // Even top range: edge-count certificate e > K n^{1+2/ell} at failures.
    double even_turan_constant = 1.0;

    // Sublinear dispatch: bottom range when m' < coeff * log(n)^exponent,
    // middle up to multiplier * sqrt(n), top above.
    double low_range_coeff = 1.0;
    double low_range_exponent = 1.0;
    double sqrt_range_multiplier = 2.0;

    // Search budgets for the path / single-cycle searches.
    std::uint64_t path_search_budget = 2'000'000;
    std::uint64_t cycle_search_budget = 20'000'000;

    static PackerConfig desk(int ell);
    static PackerConfig paper(int ell);

    double high_degree_threshold(int n) const { return n / high_degree_divisor; }
};

// Structured progress record emitted by every pipeline stage.
struct StageRecord {
    std::string stage;
    long long target = 0;
    long long achieved = 0;
    double elapsed_s = 0.0;
    std::string note;
};

struct PackResult {
    CyclePacking packing;
    std::vector<StageRecord> stages;
    std::string regime;  // dispatch trace for sublinear_pack

    int size() const { return packing.size(); }
    bool reached(long long target) const { return packing.size() >= target; }
};

struct HighDegreeSplit {
    std::vector<VertexId> high_degree;  // V'
    std::vector<VertexId> rest;         // V \ V', ascending
    Graph rest_graph;                   // induced on rest (rest[i] -> i)
    int rest_min_degree = 0;
    int rest_max_degree = 0;
};

// V' = vertices with degree >= n / cfg.high_degree_divisor, plus the induced
// graph on the remainder.
HighDegreeSplit split_high_degree(const Graph& g, const PackerConfig& cfg);

// Path on k vertices inside `region` using only random-origin edges, by
// exhaustive seeded DFS with degree-ordered expansion (budgeted). k = 1
// returns a single vertex.
std::optional<std::vector<VertexId>> path_in_random_subgraph(const PerturbedGraph& pg,
                                                             const std::vector<VertexId>& region,
                                                             int k,
                                                             std::uint64_t budget = 2'000'000);

// Greedy cover: for uncovered v in V' (descending base degree), find an
// (ell-1)-vertex random path inside v's uncovered base neighbourhood and
// close the cycle through v. Stops at `target` or when no vertex of V' can
// be completed; partial packings are returned with a shortfall record.
// Vertices in `excluded` are treated as covered from the start.
PackResult greedy_cover_high_degree(const PerturbedGraph& pg,
                                    const std::vector<VertexId>& high_degree, long long target,
                                    const PackerConfig& cfg,
                                    const std::vector<VertexId>& excluded = {});

struct Star {
    VertexId centre;
    std::vector<VertexId> leaves;
    int leaf_count() const { return static_cast<int>(leaves.size()); }
};

struct StarFamily {
    std::vector<Star> stars;
    double achieved_sum_sq = 0.0;  // sum of squared leaf counts
    double target_sum_sq = 0.0;    // star_s * eps^2 * n * m
};

// Greedy realization of the disjoint-star interface: highest residual degree
// vertex becomes a centre claiming min(residual, floor(eps*sqrt(n))) leaves;
// candidates with fewer than ceil(eps*m) free neighbours are skipped. The
// achieved sum is reported, never asserted.
StarFamily star_family(const Graph& g, int m, const PackerConfig& cfg);

struct ExpanderResult {
    std::vector<VertexId> reached;  // {w in B : some v in A with vw random}
    bool deficient = false;         // |reached| < |A|
};

// Neighbourhood expansion of A into B using only random edges of the given
// reveal round (round 0 = the materialized random part; q ignored there,
// negative q defaults to pg.p()).
ExpanderResult expander_extend(const PerturbedGraph& pg, const std::vector<VertexId>& a,
                               const std::vector<VertexId>& b, std::uint64_t round = 0,
                               double q = -1.0);

// Star-chain pipeline for the middle range: star family, leaf split, chains
// grown through the unused pool with expander_extend, dyadic buckets, and
// one closing random edge per star walked back through the chain levels.
PackResult star_chain_pack(const PerturbedGraph& pg, int m, const PackerConfig& cfg);

struct MaxCutResult {
    std::vector<VertexId> side_a;         // |A| <= |B|
    std::vector<VertexId> side_b;
    Graph cross_graph;                    // spanning bipartite subgraph G[A,B]
    std::vector<long long> cut_trajectory;  // cut size after each move
};

// Local-search max-cut from a seeded random partition; moves the largest
// gain vertex until every vertex has at least half of its neighbours across,
// which guarantees deg_G'(v) >= ceil(deg_G(v)/2).
MaxCutResult max_cut_bipartition(const Graph& g, std::uint64_t seed = 0);

enum class DrcStatus { ok, astar_too_small, no_drc_vertex, anchor_shortfall };

struct DrcPathResult {
    DrcStatus status = DrcStatus::ok;
    // v_2 ... v_{ell-1}: ell-2 vertices alternating A,B,A,...,A.
    std::vector<VertexId> path;
    std::vector<VertexId> anchors_front;  // neighbours of the first path vertex
    std::vector<VertexId> anchors_back;   // neighbours of the last path vertex
    int best_score = 0;                   // max X - Y over scanned candidates
    std::string error() const;
};

// Derandomized dependent random choice on the bipartite graph g_bip with
// availability sets a_avail, b_avail: A* = available A-vertices with at
// least m/astar_degree_divisor neighbours in B_avail; scan every candidate
// v in B_avail for the one maximizing X - Y (X = |N(v, A*)|, Y = pairs of
// N(v, A*) with fewer than ell/2 common neighbours in B_avail), delete one
// endpoint per bad pair, take floor(ell/2) survivors, join them through
// distinct common neighbours, and reserve two disjoint anchor sets.
DrcPathResult drc_path(const Graph& g_bip, const std::vector<VertexId>& a_avail,
                       const std::vector<VertexId>& b_avail, int ell, int m,
                       const PackerConfig& cfg);

struct RoundPlan {
    int s = 0;     // cycle target per round, ceil(2n/m)
    int t = 0;     // rounds, ceil(m^2/(2n))
    double q = 0;  // per-round reveal probability

    static RoundPlan make(int n, int m, const PackerConfig& cfg);
    double budget() const { return t * q; }
};

// Odd top range: max-cut bipartition, then t rounds that each build s
// (path, anchors) structures via drc_path under cumulative exclusions and
// close them with one fresh anchor-to-anchor random edge at probability q.
// Fails upfront if the budget identity t*q <= p is violated.
PackResult odd_rounds_pack(const PerturbedGraph& pg, int m, const PackerConfig& cfg);

// Even top range: repeatedly extract one C_ell (DFS with early exit), remove
// its vertices, until m cycles or none found; failures report the edge-count
// certificate e(G') vs K * v(G')^{1+2/ell}.
PackResult even_greedy_pack(const Graph& g_union, int ell, long long m, const PackerConfig& cfg);
PackResult even_greedy_pack(const Graph& g_union, int ell, long long m);

// Dispatcher: high-degree split, then by residual target m' either harvest
// from the random part alone (bottom), star chains (middle), or the parity
// split even_greedy / odd_rounds (top); finally tops up with V' vertices.
PackResult sublinear_pack(const PerturbedGraph& pg, int m, const PackerConfig& cfg);

}  // namespace cyclepack
