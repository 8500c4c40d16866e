#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cyclepack {

using VertexId = int;

// Undirected simple graph on a fixed vertex set [0, n). Neighbour lists are
// kept sorted; up to kDenseBitLimit vertices a dense bit-row per vertex is
// maintained as well, since common-neighbour queries dominate the packing
// workloads.
class Graph {
public:
    static constexpr int kDenseBitLimit = 4096;

    Graph() = default;
    explicit Graph(int n);

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return m_; }

    // Returns false if the edge was already present. Self-loops are rejected.
    bool add_edge(VertexId u, VertexId v);

    bool has_edge(VertexId u, VertexId v) const;
    int degree(VertexId v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }

    int min_degree() const;
    int max_degree() const;

    std::vector<std::pair<VertexId, VertexId>> edges() const;

    int count_common_neighbors(VertexId u, VertexId v) const;
    std::vector<VertexId> common_neighbors(VertexId u, VertexId v) const;

    // Common neighbours of u and v restricted to allowed[w] != 0.
    int count_common_neighbors_in(VertexId u, VertexId v, const std::vector<char>& allowed) const;

    // Induced subgraph; vertex i of the result corresponds to vertices[i].
    Graph induced(const std::vector<VertexId>& vertices) const;

    // Union on a shared vertex set.
    static Graph union_of(const Graph& a, const Graph& b);

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    bool dense() const { return row_words_ > 0; }
    bool bit(VertexId u, VertexId v) const {
        return (bits_[static_cast<std::size_t>(u) * row_words_ + (v >> 6)] >> (v & 63)) & 1u;
    }

    int n_ = 0;
    std::size_t m_ = 0;
    int row_words_ = 0;
    std::vector<std::vector<VertexId>> adj_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace cyclepack
