#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cyclepack/graph.hpp"
#include "cyclepack/rational.hpp"

namespace cyclepack {

enum class EdgeOrigin { none, deterministic, random, both };

// The union G ∪ G(n,p) of a deterministic base graph and a seeded binomial
// random graph on the same vertex set, with per-edge origin labels. Edge
// indicators come from a counter stream keyed on (seed, round, pair), so a
// single edge of any reveal round is reproducible in isolation.
class PerturbedGraph {
public:
    // Samples the random part from (seed, round 0).
    PerturbedGraph(Graph base, double p, std::uint64_t seed);

    // Takes an explicit random part (used for induced sub-instances); round
    // 0 queries answer from it, rounds >= 1 draw from the seed's streams.
    PerturbedGraph(Graph base, Graph random_part, double p, std::uint64_t seed);

    int vertex_count() const { return base_.vertex_count(); }
    const Graph& base() const { return base_; }
    const Graph& random_part() const { return random_part_; }
    const Graph& union_graph() const { return union_; }
    double p() const { return p_; }
    std::uint64_t seed() const { return seed_; }

    EdgeOrigin origin(VertexId u, VertexId v) const;

    // Per-round edge reveal at probability q. Round 0 answers from the
    // materialized random part (q ignored). Rounds r >= 1 are the disjoint
    // probability slices [(r-1)q, rq) of the reveal stream: each round has
    // fresh randomness, and as long as round*q <= p every round edge is an
    // edge of the materialized part, so packings built from round edges
    // verify against the union graph.
    bool random_edge_in_round(std::uint64_t round, VertexId u, VertexId v, double q) const;

    // Sub-instance on `vertices` (result vertex i = vertices[i]); both parts
    // are induced and the reveal stream stays aligned with the parent, so
    // round slices remain subsets of the induced random part.
    PerturbedGraph induced(const std::vector<VertexId>& vertices, std::uint64_t sub_seed) const;

private:
    Graph base_;
    Graph random_part_;
    Graph union_;
    double p_;
    std::uint64_t seed_;
    std::uint64_t stream_seed_;
    std::vector<VertexId> stream_ids_;  // vertex ids in the reveal stream
};

// Complete multipartite graph; class i occupies a contiguous vertex range,
// in the order given.
Graph complete_multipartite(const std::vector<int>& class_sizes);

// K_{alpha n, (1-alpha) n}; requires alpha*n integral and 0 < alpha < 1/2.
Graph extremal_even(const Rational& alpha, int n);

// Complete tripartite graph with one class of size (alpha - (ell-1)/(2 ell)) n
// and two classes of size (1/2 - alpha/2 + (ell-1)/(4 ell)) n; all sizes must
// be integral and positive, 1/2 <= alpha < (ell+1)/(2 ell), ell odd.
Graph extremal_odd(const Rational& alpha, int ell, int n);

Graph gnp(int n, double p, std::uint64_t seed);

// G(u_size, v_size, p): only cross pairs sampled; left side first.
Graph bipartite_gnp(int u_size, int v_size, double p, std::uint64_t seed);

PerturbedGraph perturb(Graph g, double p, std::uint64_t seed);

struct MinDegreeRandomOptions {
    double base_density_factor = 1.0;  // base sample at p = factor * m / n
    int max_degree_cap = -1;           // -1: no cap beyond n-1
};

// Random graph with min degree >= m: sparse G(n, c*m/n) plus repair edges,
// lowest-degree-first with seeded tie-breaking.
Graph min_degree_random(int n, int m, std::uint64_t seed, MinDegreeRandomOptions opts = {});

// Named construction selector; the serializable face of the generators used
// by sweeps and the CLI.
struct ConstructionSpec {
    enum class Kind {
        complete_bipartite,
        complete_tripartite,
        extremal_even,
        extremal_odd,
        bipartite_extremal_log,  // K_{n/ell, n - n/ell}
        gnp,
        min_degree_random,
    };

    Kind kind = Kind::gnp;
    int n = 0;
    int ell = 0;
    Rational alpha;
    double p = 0.0;
    int m = 0;
    std::vector<int> class_sizes;

    Graph build(std::uint64_t seed) const;
    bool randomized() const { return kind == Kind::gnp || kind == Kind::min_degree_random; }
    std::string kind_name() const;
    static Kind kind_from_name(const std::string& name);
};

}  // namespace cyclepack
