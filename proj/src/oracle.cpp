#include "cyclepack/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cyclepack {

namespace {

using Words = std::vector<std::uint64_t>;

struct BitOps {
    static bool intersects(const Words& a, const Words& b) {
        for (std::size_t w = 0; w < a.size(); ++w)
            if (a[w] & b[w]) return true;
        return false;
    }
    static int popcount(const Words& a) {
        int c = 0;
        for (std::uint64_t w : a) c += __builtin_popcountll(w);
        return c;
    }
    static int popcount_and(const Words& a, const Words& b) {
        int c = 0;
        for (std::size_t w = 0; w < a.size(); ++w) c += __builtin_popcountll(a[w] & b[w]);
        return c;
    }
    static bool any(const Words& a) {
        for (std::uint64_t w : a)
            if (w) return true;
        return false;
    }
};

// Branch-and-bound over the cycle-conflict structure. Cycle sets are kept as
// bitmasks with precomputed pairwise compatibility; the upper bound combines
// the fractional vertex-capacity bound with a greedy stabbing set (any set
// of vertices hitting every available cycle bounds the packing size, since
// disjoint cycles hold distinct stab vertices).
struct Search {
    int n;
    int ell;
    int cycle_words;
    const std::vector<Words>& vertex_cycles;  // per vertex: cycles containing it
    const std::vector<Words>& compat;         // per cycle: disjoint cycles
    const std::vector<std::vector<VertexId>>& members;  // per cycle: vertices

    std::uint64_t node_budget;
    int prune_floor = 0;  // decision mode: prune anything that cannot reach the limit
    std::uint64_t nodes = 0;
    bool out_of_budget = false;

    std::vector<int> chosen;
    std::vector<int> best;

    int stab_bound(const Words& avail, const std::vector<char>& free_vertex, int cap) const {
        Words remaining = avail;
        int k = 0;
        while (BitOps::any(remaining)) {
            if (k >= cap) return cap;  // no prune possible, stop early
            int best_cnt = 0;
            VertexId best_v = -1;
            for (VertexId v = 0; v < n; ++v) {
                if (!free_vertex[v]) continue;
                int cnt = BitOps::popcount_and(remaining, vertex_cycles[v]);
                if (cnt > best_cnt) {
                    best_cnt = cnt;
                    best_v = v;
                }
            }
            if (best_v < 0) break;  // leftover cycles use no free vertex: impossible
            for (int w = 0; w < cycle_words; ++w) remaining[w] &= ~vertex_cycles[best_v][w];
            ++k;
        }
        return k;
    }

    void run(Words avail, std::vector<char> free_vertex, int stop_at) {
        step(avail, free_vertex, stop_at);
    }

    void step(Words& avail, std::vector<char>& free_vertex, int stop_at) {
        if (out_of_budget) return;
        if (++nodes > node_budget) {
            out_of_budget = true;
            return;
        }
        if (chosen.size() > best.size()) best = chosen;
        if (static_cast<int>(best.size()) >= stop_at) return;
        if (!BitOps::any(avail)) return;

        // One pass: per-vertex option counts give the coverable-vertex bound
        // and the branch vertex (fewest options).
        int coverable = 0;
        VertexId branch_vertex = -1;
        int fewest = -1;
        for (VertexId v = 0; v < n; ++v) {
            if (!free_vertex[v]) continue;
            int cnt = BitOps::popcount_and(avail, vertex_cycles[v]);
            if (cnt == 0) continue;
            ++coverable;
            if (fewest < 0 || cnt < fewest) {
                fewest = cnt;
                branch_vertex = v;
            }
        }
        if (branch_vertex < 0) return;

        int incumbent = std::max(static_cast<int>(best.size()), prune_floor);
        int slack = incumbent - static_cast<int>(chosen.size());
        int cap = stop_at - static_cast<int>(chosen.size());
        int bound = coverable / ell;
        if (static_cast<int>(chosen.size()) + bound <= incumbent) return;
        bound = std::min(bound, stab_bound(avail, free_vertex, std::min(cap, slack + 1)));
        if (static_cast<int>(chosen.size()) + bound <= incumbent) return;

        std::vector<int> covering;
        for (int w = 0; w < cycle_words; ++w) {
            std::uint64_t bits = avail[w] & vertex_cycles[branch_vertex][w];
            while (bits) {
                covering.push_back(w * 64 + __builtin_ctzll(bits));
                bits &= bits - 1;
            }
        }
        // Fail-soft value ordering: cycles that keep the most of the pool
        // alive first.
        if (covering.size() > 1) {
            std::vector<std::pair<int, int>> scored;
            scored.reserve(covering.size());
            for (int c : covering) scored.emplace_back(-BitOps::popcount_and(avail, compat[c]), c);
            std::sort(scored.begin(), scored.end());
            for (std::size_t i = 0; i < scored.size(); ++i) covering[i] = scored[i].second;
        }

        for (int c : covering) {
            chosen.push_back(c);
            Words child(cycle_words);
            for (int w = 0; w < cycle_words; ++w) child[w] = avail[w] & compat[c][w];
            for (VertexId v : members[c]) free_vertex[v] = 0;
            step(child, free_vertex, stop_at);
            for (VertexId v : members[c]) free_vertex[v] = 1;
            chosen.pop_back();
            if (out_of_budget || static_cast<int>(best.size()) >= stop_at) return;
        }

        // Or leave the branch vertex uncovered.
        Words child(cycle_words);
        for (int w = 0; w < cycle_words; ++w)
            child[w] = avail[w] & ~vertex_cycles[branch_vertex][w];
        free_vertex[branch_vertex] = 0;
        step(child, free_vertex, stop_at);
        free_vertex[branch_vertex] = 1;
    }
};

}  // namespace

OracleResult max_disjoint_cycles_exact(const Graph& g, int ell, OracleOptions opts) {
    OracleResult result;
    result.packing.ell = ell;

    auto enumeration = enumerate_cycles(g, ell, opts.cycle_cap);
    if (enumeration.truncated) {
        result.unavailable_reason =
            "cycle enumeration exceeded cap (" + std::to_string(opts.cycle_cap) + ")";
        return result;
    }
    const auto& cycles = enumeration.cycles;
    int cycle_count = static_cast<int>(cycles.size());
    int n = g.vertex_count();
    int cycle_words = (cycle_count + 63) / 64;

    std::vector<std::vector<VertexId>> members(cycle_count);
    std::vector<Words> vertex_cycles(n, Words(cycle_words, 0));
    for (int c = 0; c < cycle_count; ++c) {
        members[c] = cycles[c].vertices;
        for (VertexId v : members[c]) vertex_cycles[v][c >> 6] |= 1ULL << (c & 63);
    }

    // Pairwise compatibility (vertex-disjointness) masks.
    int vertex_words = (n + 63) / 64;
    std::vector<Words> vmask(cycle_count, Words(vertex_words, 0));
    for (int c = 0; c < cycle_count; ++c)
        for (VertexId v : members[c]) vmask[c][v >> 6] |= 1ULL << (v & 63);
    std::vector<Words> compat(cycle_count, Words(cycle_words, 0));
    for (int c = 0; c < cycle_count; ++c)
        for (int d = c + 1; d < cycle_count; ++d)
            if (!BitOps::intersects(vmask[c], vmask[d])) {
                compat[c][d >> 6] |= 1ULL << (d & 63);
                compat[d][c >> 6] |= 1ULL << (c & 63);
            }

    // Connected components of the conflict structure pack independently.
    std::vector<int> comp(cycle_count, -1);
    int comp_count = 0;
    for (int c = 0; c < cycle_count; ++c) {
        if (comp[c] != -1) continue;
        std::vector<int> stack{c};
        comp[c] = comp_count;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (VertexId v : members[x]) {
                for (int w = 0; w < cycle_words; ++w) {
                    std::uint64_t bits = vertex_cycles[v][w];
                    while (bits) {
                        int d = w * 64 + __builtin_ctzll(bits);
                        bits &= bits - 1;
                        if (comp[d] == -1) {
                            comp[d] = comp_count;
                            stack.push_back(d);
                        }
                    }
                }
            }
        }
        ++comp_count;
    }
    std::vector<std::vector<int>> groups(comp_count);
    for (int c = 0; c < cycle_count; ++c) groups[comp[c]].push_back(c);
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });

    // Cheap per-component root bounds (vertex capacity), used to derive the
    // decision-mode prune floors.
    std::vector<int> root_bound(groups.size(), 0);
    for (std::size_t i = 0; i < groups.size(); ++i) {
        std::vector<char> seen(n, 0);
        int verts = 0;
        for (int c : groups[i])
            for (VertexId v : members[c])
                if (!seen[v]) {
                    seen[v] = 1;
                    ++verts;
                }
        root_bound[i] = std::min<int>(verts / ell, static_cast<int>(groups[i].size()));
    }

    int stop_at = opts.limit ? *opts.limit : (ell > 0 ? n / ell : 0);
    std::vector<int> chosen_all;
    std::uint64_t nodes_total = 0;

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& group = groups[gi];
        if (opts.limit && static_cast<int>(chosen_all.size()) >= *opts.limit) break;

        Search search{n,      ell,    cycle_words, vertex_cycles,
                      compat, members, opts.node_budget - nodes_total};
        int raw_floor = -1;
        if (opts.decision_only && opts.limit) {
            int rest_bound = 0;
            for (std::size_t j = gi + 1; j < groups.size(); ++j) rest_bound += root_bound[j];
            raw_floor = *opts.limit - 1 - static_cast<int>(chosen_all.size()) - rest_bound;
            search.prune_floor = std::max(raw_floor, 0);
        }

        // Greedy min-conflict start for the incumbent.
        {
            Words group_mask(cycle_words, 0);
            for (int c : group) group_mask[c >> 6] |= 1ULL << (c & 63);
            std::vector<int> order = group;
            std::vector<int> conflicts(cycle_count, 0);
            for (int c : group)
                conflicts[c] = static_cast<int>(group.size()) - 1 -
                               BitOps::popcount_and(compat[c], group_mask);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (conflicts[a] != conflicts[b]) return conflicts[a] < conflicts[b];
                return a < b;
            });
            std::vector<char> blocked(cycle_count, 0);
            for (int c : order) {
                if (blocked[c]) continue;
                search.best.push_back(c);
                for (int d : group)
                    if (!blocked[d] && d != c && BitOps::intersects(vmask[c], vmask[d]))
                        blocked[d] = 1;
                blocked[c] = 1;
            }
        }

        Words avail(cycle_words, 0);
        std::vector<char> free_vertex(n, 0);
        for (int c : group) {
            avail[c >> 6] |= 1ULL << (c & 63);
            for (VertexId v : members[c]) free_vertex[v] = 1;
        }
        int remaining_target =
            opts.limit ? *opts.limit - static_cast<int>(chosen_all.size()) : stop_at;
        search.run(std::move(avail), std::move(free_vertex), remaining_target);
        nodes_total += search.nodes;
        if (search.out_of_budget) {
            result.nodes = nodes_total;
            result.unavailable_reason =
                "node budget exceeded (" + std::to_string(opts.node_budget) + ")";
            return result;
        }
        chosen_all.insert(chosen_all.end(), search.best.begin(), search.best.end());
        if (raw_floor >= 0 && static_cast<int>(search.best.size()) <= raw_floor) {
            // This component cannot lift the total to the limit even with
            // every other component at its root bound: decision settled.
            break;
        }
    }

    if (opts.limit && static_cast<int>(chosen_all.size()) > *opts.limit)
        chosen_all.resize(*opts.limit);
    result.available = true;
    result.nodes = nodes_total;
    result.reached_limit = opts.limit && static_cast<int>(chosen_all.size()) >= *opts.limit;
    for (int c : chosen_all) result.packing.cycles.push_back(cycles[c]);
    return result;
}

}  // namespace cyclepack
