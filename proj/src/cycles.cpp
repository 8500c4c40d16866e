#include "cyclepack/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cyclepack {

bool Cycle::valid_in(const Graph& g) const {
    int k = length();
    if (k < 3) return false;
    std::vector<VertexId> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (int i = 0; i < k; ++i) {
        VertexId u = vertices[i];
        VertexId v = vertices[(i + 1) % k];
        if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count()) return false;
        if (!g.has_edge(u, v)) return false;
    }
    return true;
}

Cycle Cycle::canonical() const {
    int k = length();
    if (k == 0) return *this;
    int pos = static_cast<int>(std::min_element(vertices.begin(), vertices.end()) - vertices.begin());
    VertexId left = vertices[(pos + k - 1) % k];
    VertexId right = vertices[(pos + 1) % k];
    Cycle out;
    out.vertices.reserve(k);
    int dir = right <= left ? 1 : -1;
    for (int i = 0; i < k; ++i) out.vertices.push_back(vertices[((pos + dir * i) % k + k) % k]);
    return out;
}

std::vector<VertexId> CyclePacking::covered_vertices() const {
    std::vector<VertexId> out;
    for (const auto& c : cycles) out.insert(out.end(), c.vertices.begin(), c.vertices.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Enumerator {
    const Graph& g;
    int ell;
    std::optional<std::size_t> cap;
    CycleEnumeration result;
    std::vector<VertexId> path;
    std::vector<char> in_path;
    bool done = false;

    Enumerator(const Graph& g_, int ell_, std::optional<std::size_t> cap_)
        : g(g_), ell(ell_), cap(cap_), in_path(g_.vertex_count(), 0) {}

    void extend() {
        if (done) return;
        VertexId start = path.front();
        VertexId last = path.back();
        if (static_cast<int>(path.size()) == ell) {
            // Orientation is fixed by requiring second < last vertex.
            if (path[1] < last && g.has_edge(last, start)) {
                if (cap && result.cycles.size() >= *cap) {
                    result.truncated = true;
                    done = true;
                    return;
                }
                Cycle c;
                c.vertices = path;
                result.cycles.push_back(std::move(c));
            }
            return;
        }
        for (VertexId w : g.neighbors(last)) {
            if (w <= start || in_path[w]) continue;
            path.push_back(w);
            in_path[w] = 1;
            extend();
            in_path[w] = 0;
            path.pop_back();
            if (done) return;
        }
    }
};

}  // namespace

CycleEnumeration enumerate_cycles(const Graph& g, int ell, std::optional<std::size_t> cap) {
    if (ell < 3) throw std::invalid_argument("cycle length must be at least 3");
    Enumerator e(g, ell, cap);
    for (VertexId s = 0; s < g.vertex_count() && !e.done; ++s) {
        e.path.assign(1, s);
        e.in_path[s] = 1;
        e.extend();
        e.in_path[s] = 0;
    }
    return std::move(e.result);
}

std::string PackingDefect::describe() const {
    switch (kind) {
        case Kind::wrong_length:
            return "cycle " + std::to_string(cycle_index) + " has wrong length";
        case Kind::repeated_vertex:
            return "cycle " + std::to_string(cycle_index) + " repeats vertex " + std::to_string(u);
        case Kind::missing_edge:
            return "cycle " + std::to_string(cycle_index) + " uses non-edge (" + std::to_string(u) +
                   "," + std::to_string(v) + ")";
        case Kind::shared_vertex:
            return "cycles " + std::to_string(cycle_index) + " and " +
                   std::to_string(other_cycle_index) + " share vertex " + std::to_string(u);
    }
    return {};
}

PackingReport verify_packing(const Graph& g, const CyclePacking& p) {
    PackingReport report;
    std::vector<int> owner(g.vertex_count(), -1);
    for (int i = 0; i < p.size(); ++i) {
        const auto& verts = p.cycles[i].vertices;
        if (static_cast<int>(verts.size()) != p.ell) {
            report.defects.push_back({PackingDefect::Kind::wrong_length, i, -1, -1, -1});
        }
        std::vector<VertexId> sorted = verts;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t j = 1; j < sorted.size(); ++j) {
            if (sorted[j] == sorted[j - 1]) {
                report.defects.push_back({PackingDefect::Kind::repeated_vertex, i, -1, sorted[j], -1});
            }
        }
        int k = static_cast<int>(verts.size());
        for (int j = 0; j < k; ++j) {
            VertexId u = verts[j];
            VertexId v = verts[(j + 1) % k];
            if (u == v) continue;  // already reported as repeated
            if (!g.has_edge(u, v)) {
                report.defects.push_back({PackingDefect::Kind::missing_edge, i, -1, u, v});
            }
        }
        for (VertexId v : verts) {
            if (v < 0 || v >= g.vertex_count()) continue;
            if (owner[v] != -1 && owner[v] != i) {
                report.defects.push_back({PackingDefect::Kind::shared_vertex, i, owner[v], v, -1});
            } else {
                owner[v] = i;
            }
        }
    }
    return report;
}

double expected_cycle_count(int n, int ell, double p) {
    if (ell < 3 || ell > n) throw std::invalid_argument("need 3 <= ell <= n");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability out of range");
    // log C(n, ell) + log (ell-1)!/2 + ell log p, assembled in log space to
    // survive large n.
    if (p == 0.0) return 0.0;
    double log_count = 0.0;
    for (int i = 0; i < ell; ++i) log_count += std::log(static_cast<double>(n - i));
    for (int i = 2; i <= ell; ++i) log_count -= std::log(static_cast<double>(i));
    for (int i = 2; i < ell; ++i) log_count += std::log(static_cast<double>(i));
    log_count -= std::log(2.0);
    return std::exp(log_count + ell * std::log(p));
}

namespace {

struct SingleCycleSearch {
    const Graph& g;
    int ell;
    const std::vector<char>& active;
    std::uint64_t* budget;
    std::vector<VertexId> path;
    std::vector<char> in_path;

    bool usable(VertexId v) const { return active.empty() || active[v]; }

    bool charge() {
        if (!budget) return true;
        if (*budget == 0) return false;
        --*budget;
        return true;
    }

    bool extend() {
        if (!charge()) return false;
        VertexId start = path.front();
        VertexId last = path.back();
        if (static_cast<int>(path.size()) == ell) return g.has_edge(last, start);
        for (VertexId w : g.neighbors(last)) {
            if (w <= start || in_path[w] || !usable(w)) continue;
            path.push_back(w);
            in_path[w] = 1;
            if (extend()) return true;
            in_path[w] = 0;
            path.pop_back();
            if (budget && *budget == 0) return false;
        }
        return false;
    }
};

}  // namespace

std::optional<Cycle> find_one_cycle(const Graph& g, int ell, const std::vector<char>& active,
                                    std::uint64_t* budget) {
    if (ell < 3) throw std::invalid_argument("cycle length must be at least 3");
    SingleCycleSearch search{g, ell, active, budget, {}, std::vector<char>(g.vertex_count(), 0)};
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        if (!search.usable(s)) continue;
        search.path.assign(1, s);
        search.in_path.assign(g.vertex_count(), 0);
        search.in_path[s] = 1;
        if (search.extend()) {
            Cycle c;
            c.vertices = search.path;
            return c;
        }
        if (budget && *budget == 0) return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace cyclepack
