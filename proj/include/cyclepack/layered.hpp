#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclepack/cycles.hpp"
#include "cyclepack/graph.hpp"
#include "cyclepack/packer.hpp"

namespace cyclepack {

// A layered cycle-factor instance: layer 0 is V, layers 1..k are the U_i.
// Two shapes occur: k = ell-1 (a chain of cross pairs closed through V) and
// k = 1 (one dense pair with internal edges on V). Edges are restricted to
// consecutive layers (cyclically) plus the optional internal graph on V.
class LayeredInstance {
public:
    LayeredInstance(int ell, std::vector<int> layer_sizes);

    int ell() const { return ell_; }
    int u_layer_count() const { return static_cast<int>(sizes_.size()) - 1; }
    int total_vertices() const { return graph_.vertex_count(); }
    const std::vector<int>& layer_sizes() const { return sizes_; }
    const Graph& graph() const { return graph_; }

    int layer_of(VertexId v) const { return layer_of_[v]; }
    int layer_start(int layer) const { return starts_[layer]; }
    std::vector<VertexId> layer_vertices(int layer) const;

    bool pair_allowed(int layer_a, int layer_b) const;
    void add_edge(VertexId u, VertexId v);  // validates the layer pair
    bool has_internal_edges() const { return internal_edges_ > 0; }

    void write(std::ostream& out) const;
    static LayeredInstance read(std::istream& in);

private:
    int ell_;
    std::vector<int> sizes_;
    std::vector<int> starts_;
    std::vector<int> layer_of_;
    Graph graph_;
    long long internal_edges_ = 0;
};

// Randomized instance builder: outer pairs (V,U_1) and (U_k,V), middle pairs
// (U_i,U_{i+1}), and the internal graph on V, each at its own density.
struct LayeredBuildSpec {
    int ell = 3;
    std::vector<int> layer_sizes;  // [|V|, |U_1|, ..., |U_k|]
    double outer_density = 1.0;
    double middle_density = 1.0;
    double internal_density = 0.0;
    std::uint64_t seed = 0;
};
LayeredInstance build_layered(const LayeredBuildSpec& spec);

struct SuperRegularityReport {
    double d = 0.0;
    double eps = 0.0;
    int samples = 0;
    double min_degree_ratio_left = 0.0;   // min over left vertices of deg/|R|
    double min_degree_ratio_right = 0.0;
    double pair_density = 0.0;
    double max_density_deviation = 0.0;  // sampled estimate
    bool degree_pass = false;
    bool density_pass = false;
    bool pass = false;
};

// Exact minimum-degree test plus sampled subset-pair density deviations
// (subsets of fractional size eps). The density part is an estimate with
// the stated sample count, not an exhaustive regularity check.
SuperRegularityReport superregular_check(const Graph& bipartite, int left_size, double eps,
                                         double d, int samples, std::uint64_t seed = 0);

enum class LayeredMode { exact, heuristic };

struct LayeredOptions {
    int exact_vertex_limit = 24;
    int restarts = 50;
    std::uint64_t seed = 0;
    std::uint64_t oracle_node_budget = 20'000'000;
};

struct LayeredResult {
    std::optional<CyclePacking> factor;
    bool infeasible_certified = false;  // exact mode proved no factor exists
    int oracle_max = -1;                // certificate for infeasibility
    bool oracle_unavailable = false;
    int best_unclosed = 0;              // heuristic: fewest uncovered vertices seen
    int restarts_used = 0;
    std::vector<StageRecord> stages;
};

// Exact mode reduces to the disjoint-cycle oracle with a cover-all target;
// heuristic mode builds layer-aligned threads from per-pair matchings,
// repairs non-closing threads by endpoint rotations, routes size surpluses
// through internal edges, and finishes leftovers with pattern-guided cycle
// search; bounded restarts with fresh seeds.
LayeredResult layered_factor(const LayeredInstance& inst, LayeredMode mode,
                             LayeredOptions opts = {});

struct ThreadRepairResult {
    std::vector<int> closed_after_swap;  // closed-thread count after each accepted swap
    int closed = 0;
};

// Greedy tail swaps between threads: threads i and j exchange tails when the
// crossing edges exist and the number of closed threads strictly increases.
// starts/penults are fixed; tails is permuted in place.
ThreadRepairResult rotation_repair(const Graph& g, const std::vector<VertexId>& starts,
                                   const std::vector<VertexId>& penults,
                                   std::vector<VertexId>& tails);

}  // namespace cyclepack
