#include "cyclepack/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclepack {

Graph::Graph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    adj_.resize(n);
    if (n <= kDenseBitLimit) {
        row_words_ = (n + 63) / 64;
        bits_.assign(static_cast<std::size_t>(n) * row_words_, 0);
    }
}

bool Graph::add_edge(VertexId u, VertexId v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("vertex id out of range");
    if (u == v) throw std::invalid_argument("self-loop rejected");
    if (has_edge(u, v)) return false;
    auto insert_sorted = [](std::vector<VertexId>& list, VertexId x) {
        list.insert(std::lower_bound(list.begin(), list.end(), x), x);
    };
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
    if (dense()) {
        bits_[static_cast<std::size_t>(u) * row_words_ + (v >> 6)] |= 1ULL << (v & 63);
        bits_[static_cast<std::size_t>(v) * row_words_ + (u >> 6)] |= 1ULL << (u & 63);
    }
    ++m_;
    return true;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    if (u == v) return false;
    if (dense()) return bit(u, v);
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    VertexId t = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), t);
}

int Graph::min_degree() const {
    int d = n_ == 0 ? 0 : degree(0);
    for (VertexId v = 1; v < n_; ++v) d = std::min(d, degree(v));
    return d;
}

int Graph::max_degree() const {
    int d = 0;
    for (VertexId v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(m_);
    for (VertexId u = 0; u < n_; ++u)
        for (VertexId v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

int Graph::count_common_neighbors(VertexId u, VertexId v) const {
    if (dense()) {
        const std::uint64_t* ru = bits_.data() + static_cast<std::size_t>(u) * row_words_;
        const std::uint64_t* rv = bits_.data() + static_cast<std::size_t>(v) * row_words_;
        int c = 0;
        for (int w = 0; w < row_words_; ++w) c += __builtin_popcountll(ru[w] & rv[w]);
        return c;
    }
    const auto& a = adj_[u];
    const auto& b = adj_[v];
    int c = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++c; ++i; ++j; }
    }
    return c;
}

int Graph::count_common_neighbors_in(VertexId u, VertexId v,
                                     const std::vector<char>& allowed) const {
    const auto& a = adj_[u];
    const auto& b = adj_[v];
    int c = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else {
            if (allowed[a[i]]) ++c;
            ++i;
            ++j;
        }
    }
    return c;
}

std::vector<VertexId> Graph::common_neighbors(VertexId u, VertexId v) const {
    const auto& a = adj_[u];
    const auto& b = adj_[v];
    std::vector<VertexId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Graph Graph::induced(const std::vector<VertexId>& vertices) const {
    Graph g(static_cast<int>(vertices.size()));
    std::vector<int> local(n_, -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        VertexId v = vertices[i];
        if (v < 0 || v >= n_) throw std::out_of_range("vertex id out of range");
        if (local[v] != -1) throw std::invalid_argument("duplicate vertex in induced set");
        local[v] = static_cast<int>(i);
    }
    for (VertexId v : vertices)
        for (VertexId w : adj_[v])
            if (local[w] != -1 && local[v] < local[w]) g.add_edge(local[v], local[w]);
    return g;
}

Graph Graph::union_of(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count())
        throw std::invalid_argument("union of graphs on different vertex sets");
    Graph g(a.vertex_count());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(u, v);
    return g;
}

}  // namespace cyclepack
