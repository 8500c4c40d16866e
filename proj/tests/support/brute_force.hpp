#pragma once

// Test-side oracles, independent of the library's enumeration and
// branch-and-bound paths: cycles are found by checking every ordering of
// every vertex subset, and packings by exhaustive search over all
// pairwise-disjoint cycle subsets. Only usable at very small sizes.

#include <algorithm>
#include <set>
#include <vector>

#include "cyclepack/graph.hpp"

namespace cyclepack::testing {

// Every C_ell of g as a sorted canonical vertex sequence (min vertex first,
// smaller neighbour second), via permutations of ell-subsets.
inline std::vector<std::vector<VertexId>> brute_force_cycles(const Graph& g, int ell) {
    std::set<std::vector<VertexId>> found;
    int n = g.vertex_count();
    std::vector<VertexId> subset;
    std::vector<char> chosen(n, 0);

    std::function<void()> try_orders = [&]() {
        std::vector<VertexId> perm = subset;
        std::sort(perm.begin(), perm.end());
        do {
            bool ok = true;
            for (int i = 0; i < ell && ok; ++i)
                if (!g.has_edge(perm[i], perm[(i + 1) % ell])) ok = false;
            if (ok) {
                // canonical: rotate min to front, then pick direction
                std::vector<VertexId> c = perm;
                auto min_it = std::min_element(c.begin(), c.end());
                std::rotate(c.begin(), min_it, c.end());
                if (c[1] > c[ell - 1]) {
                    std::reverse(c.begin() + 1, c.end());
                }
                found.insert(c);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    };

    std::function<void(int)> pick = [&](int start) {
        if (static_cast<int>(subset.size()) == ell) {
            try_orders();
            return;
        }
        for (int v = start; v < n; ++v) {
            subset.push_back(v);
            pick(v + 1);
            subset.pop_back();
        }
    };
    if (ell <= n) pick(0);
    return {found.begin(), found.end()};
}

// Maximum number of pairwise vertex-disjoint cycles among `cycles`, by
// exhaustive subset search.
inline int brute_force_max_disjoint(const std::vector<std::vector<VertexId>>& cycles, int n) {
    std::vector<std::vector<char>> masks;
    for (const auto& c : cycles) {
        std::vector<char> mask(n, 0);
        for (VertexId v : c) mask[v] = 1;
        masks.push_back(std::move(mask));
    }
    int best = 0;
    std::vector<char> used(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int count) {
        best = std::max(best, count);
        for (std::size_t i = start; i < masks.size(); ++i) {
            bool free = true;
            for (int v = 0; v < n && free; ++v)
                if (masks[i][v] && used[v]) free = false;
            if (!free) continue;
            for (int v = 0; v < n; ++v)
                if (masks[i][v]) used[v] = 1;
            rec(i + 1, count + 1);
            for (int v = 0; v < n; ++v)
                if (masks[i][v]) used[v] = 0;
        }
    };
    rec(0, 0);
    return best;
}

inline int brute_force_max_disjoint_cycles(const Graph& g, int ell) {
    return brute_force_max_disjoint(brute_force_cycles(g, ell), g.vertex_count());
}

inline Graph make_complete(int n) {
    Graph g(n);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph make_cycle_graph(int n) {
    Graph g(n);
    for (VertexId v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

inline Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);          // outer pentagon
        g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        g.add_edge(i, 5 + i);                // spokes
    }
    return g;
}

}  // namespace cyclepack::testing
