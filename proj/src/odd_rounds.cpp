#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cyclepack/packer.hpp"
#include "cyclepack/rng.hpp"

namespace cyclepack {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

MaxCutResult max_cut_bipartition(const Graph& g, std::uint64_t seed) {
    int n = g.vertex_count();
    std::vector<char> side(n, 0);
    for (VertexId v = 0; v < n; ++v) side[v] = counter_rng::at(seed, v) & 1u;

    std::vector<int> same(n, 0);
    long long cut = 0;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId w : g.neighbors(u)) {
            if (w < u) continue;
            if (side[u] == side[w]) {
                ++same[u];
                ++same[w];
            } else {
                ++cut;
            }
        }

    MaxCutResult result;
    result.cut_trajectory.push_back(cut);
    std::uint64_t step = 0;
    while (true) {
        // gain of moving v = same(v) - cross(v) = 2 same(v) - deg(v)
        int best_gain = 0;
        VertexId best_v = -1;
        std::uint64_t best_tie = 0;
        for (VertexId v = 0; v < n; ++v) {
            int gain = 2 * same[v] - g.degree(v);
            if (gain <= 0) continue;
            std::uint64_t tie = counter_rng::at(seed ^ 0x6d6f7665ULL, (step << 20) ^ v);
            if (gain > best_gain || (gain == best_gain && tie < best_tie)) {
                best_gain = gain;
                best_v = v;
                best_tie = tie;
            }
        }
        if (best_v < 0) break;
        for (VertexId w : g.neighbors(best_v)) {
            if (side[w] == side[best_v]) {
                --same[w];
            } else {
                ++same[w];
            }
        }
        side[best_v] = !side[best_v];
        same[best_v] = g.degree(best_v) - same[best_v];
        cut += best_gain;
        result.cut_trajectory.push_back(cut);
        ++step;
    }

    int count_a = static_cast<int>(std::count(side.begin(), side.end(), char(1)));
    bool a_is_one = count_a <= n - count_a;  // |A| <= |B|
    for (VertexId v = 0; v < n; ++v)
        ((side[v] == char(a_is_one)) ? result.side_a : result.side_b).push_back(v);
    result.cross_graph = Graph(n);
    for (auto [u, w] : g.edges())
        if (side[u] != side[w]) result.cross_graph.add_edge(u, w);
    return result;
}

std::string DrcPathResult::error() const {
    switch (status) {
        case DrcStatus::ok: return "";
        case DrcStatus::astar_too_small: return "A* too small";
        case DrcStatus::no_drc_vertex: return "no candidate with X - Y >= ell/2";
        case DrcStatus::anchor_shortfall: return "anchor shortfall";
    }
    return "";
}

DrcPathResult drc_path(const Graph& g_bip, const std::vector<VertexId>& a_avail,
                       const std::vector<VertexId>& b_avail, int ell, int m,
                       const PackerConfig& cfg) {
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("drc_path needs odd ell >= 3");
    DrcPathResult result;
    int n = g_bip.vertex_count();
    int need = ell / 2;  // path vertices drawn from the A side
    int anchor_count = std::max<int>(1, static_cast<int>(std::ceil(m / cfg.anchor_size_divisor)));

    std::vector<char> in_b(n, 0);
    for (VertexId v : b_avail) in_b[v] = 1;

    auto deg_into_b = [&](VertexId v) {
        int d = 0;
        for (VertexId w : g_bip.neighbors(v))
            if (in_b[w]) ++d;
        return d;
    };

    double degree_threshold = m / cfg.astar_degree_divisor;
    std::vector<std::pair<int, VertexId>> astar;  // (-degree, id) for sorting
    for (VertexId v : a_avail) {
        int d = deg_into_b(v);
        if (d >= degree_threshold) astar.emplace_back(-d, v);
    }
    std::sort(astar.begin(), astar.end());
    int sample = std::max<int>(static_cast<int>(std::ceil(m / (8.0 * ell))), cfg.astar_sample_min);
    if (static_cast<int>(astar.size()) > sample) astar.resize(sample);
    if (static_cast<int>(astar.size()) < need) {
        result.status = DrcStatus::astar_too_small;
        return result;
    }

    std::vector<VertexId> survivors;
    if (need == 1) {
        survivors.push_back(astar.front().second);
        result.best_score = -astar.front().first;
    } else {
        std::vector<int> astar_index(n, -1);
        for (std::size_t i = 0; i < astar.size(); ++i) astar_index[astar[i].second] = static_cast<int>(i);
        std::vector<char> in_astar(n, 0);
        for (auto [negd, v] : astar) in_astar[v] = 1;

        // Pair goodness: at least ceil(ell/2) common neighbours in B_avail.
        // Cached per A*-index pair; the scan revisits the same pairs often.
        int common_needed = (ell + 1) / 2;
        std::vector<signed char> pair_cache(astar.size() * astar.size(), -1);
        auto pair_good = [&](VertexId a, VertexId b) {
            std::size_t i = astar_index[a];
            std::size_t j = astar_index[b];
            if (i > j) std::swap(i, j);
            signed char& slot = pair_cache[i * astar.size() + j];
            if (slot < 0)
                slot = g_bip.count_common_neighbors_in(a, b, in_b) >= common_needed ? 1 : 0;
            return slot == 1;
        };

        // Scan every candidate v in B_avail for the maximizer of X - Y.
        int best_score = -1;
        VertexId best_v = -1;
        std::vector<VertexId> hood;
        for (VertexId v : b_avail) {
            hood.clear();
            for (VertexId w : g_bip.neighbors(v))
                if (in_astar[w]) hood.push_back(w);
            int x = static_cast<int>(hood.size());
            if (x <= best_score) continue;  // Y >= 0, cannot beat the incumbent
            int y = 0;
            for (std::size_t i = 0; i < hood.size(); ++i)
                for (std::size_t j = i + 1; j < hood.size(); ++j)
                    if (!pair_good(hood[i], hood[j])) ++y;
            if (x - y > best_score) {
                best_score = x - y;
                best_v = v;
            }
        }
        result.best_score = std::max(best_score, 0);
        if (best_v < 0 || best_score < (ell + 1) / 2) {
            result.status = DrcStatus::no_drc_vertex;
            return result;
        }

        // Delete one endpoint of every bad pair in N(best_v, A*); the
        // remainder is pairwise good.
        hood.clear();
        for (VertexId w : g_bip.neighbors(best_v))
            if (in_astar[w]) hood.push_back(w);
        std::vector<char> deleted(hood.size(), 0);
        for (std::size_t i = 0; i < hood.size(); ++i) {
            if (deleted[i]) continue;
            for (std::size_t j = i + 1; j < hood.size(); ++j) {
                if (deleted[j]) continue;
                if (!pair_good(hood[i], hood[j])) {
                    // Drop the endpoint with the smaller degree into B_avail.
                    if (deg_into_b(hood[i]) < deg_into_b(hood[j])) {
                        deleted[i] = 1;
                        break;
                    }
                    deleted[j] = 1;
                }
            }
        }
        for (std::size_t i = 0; i < hood.size(); ++i)
            if (!deleted[i]) survivors.push_back(hood[i]);
        if (static_cast<int>(survivors.size()) < need) {
            result.status = DrcStatus::no_drc_vertex;
            return result;
        }
        std::stable_sort(survivors.begin(), survivors.end(),
                         [&](VertexId a, VertexId b) { return deg_into_b(a) > deg_into_b(b); });
        survivors.resize(need);
    }

    // Arrange survivors as v_2, v_4, ..., v_{ell-1} with the two highest
    // degrees at the ends (they must supply the anchors).
    std::vector<VertexId> evens(need);
    evens.front() = survivors[0];
    if (need > 1) evens.back() = survivors[1];
    for (int i = 1; i + 1 < need; ++i) evens[i] = survivors[i + 1];

    std::vector<char> used(n, 0);
    for (VertexId v : evens) used[v] = 1;
    result.path.push_back(evens[0]);
    for (int i = 0; i + 1 < need; ++i) {
        VertexId join = -1;
        for (VertexId w : g_bip.common_neighbors(evens[i], evens[i + 1])) {
            if (in_b[w] && !used[w]) {
                join = w;
                break;
            }
        }
        if (join < 0) {
            result.status = DrcStatus::no_drc_vertex;
            return result;
        }
        used[join] = 1;
        result.path.push_back(join);
        result.path.push_back(evens[i + 1]);
    }

    auto take_anchors = [&](VertexId v, std::vector<VertexId>& out) {
        for (VertexId w : g_bip.neighbors(v)) {
            if (static_cast<int>(out.size()) >= anchor_count) break;
            if (in_b[w] && !used[w]) {
                out.push_back(w);
                used[w] = 1;
            }
        }
        return static_cast<int>(out.size()) >= anchor_count;
    };
    if (!take_anchors(evens.front(), result.anchors_front) ||
        !take_anchors(evens.back(), result.anchors_back)) {
        result.status = DrcStatus::anchor_shortfall;
        return result;
    }
    return result;
}

RoundPlan RoundPlan::make(int n, int m, const PackerConfig& cfg) {
    if (m <= 0 || n <= 0) throw std::invalid_argument("round plan needs n, m >= 1");
    RoundPlan plan;
    plan.s = static_cast<int>((2LL * n + m - 1) / m);
    plan.t = static_cast<int>((static_cast<long long>(m) * m + 2LL * n - 1) / (2LL * n));
    plan.q = std::min(1.0, cfg.round_q_constant * std::log(static_cast<double>(n)) /
                               (static_cast<double>(m) * m));
    return plan;
}

PackResult odd_rounds_pack(const PerturbedGraph& pg, int m, const PackerConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    int ell = cfg.ell;
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("odd_rounds_pack needs odd ell");
    PackResult result;
    result.packing.ell = ell;
    if (m <= 0) return result;

    const Graph& base = pg.base();
    int n = pg.vertex_count();
    if (base.min_degree() < m)
        throw std::invalid_argument("odd_rounds_pack needs min base degree >= m");
    if (cfg.enforce_degree_hypotheses) {
        if (m < cfg.sqrt_range_multiplier * std::sqrt(static_cast<double>(n)) ||
            m > n / (16.0 * ((ell + 1) / 2)))
            throw std::invalid_argument("odd_rounds_pack: m outside the top range");
        if (base.max_degree() >= n / (32.0 * (ell / 2)))
            throw std::invalid_argument("odd_rounds_pack: max degree hypothesis violated");
    }

    RoundPlan plan = RoundPlan::make(n, m, cfg);
    if (plan.budget() > pg.p() + 1e-12)
        throw std::invalid_argument("round budget t*q = " + std::to_string(plan.budget()) +
                                    " exceeds p = " + std::to_string(pg.p()));

    MaxCutResult cut = max_cut_bipartition(base, pg.seed());
    std::vector<char> a_excluded(n, 0), b_excluded(n, 0);

    struct Structure {
        std::vector<VertexId> path;
        std::vector<VertexId> front, back;
    };

    for (int round = 1; round <= plan.t && result.packing.size() < m; ++round) {
        auto round_start = std::chrono::steady_clock::now();
        long long remaining = m - result.packing.size();
        long long to_build =
            std::min<long long>(static_cast<long long>(std::ceil(plan.s * cfg.round_overbuild)),
                                static_cast<long long>(std::ceil(remaining * cfg.round_overbuild)));

        std::vector<char> round_used(n, 0);
        std::vector<Structure> structures;
        std::string build_note;
        for (long long j = 0; j < to_build; ++j) {
            std::vector<VertexId> avail_a, avail_b;
            for (VertexId v : cut.side_a)
                if (!a_excluded[v] && !round_used[v]) avail_a.push_back(v);
            for (VertexId v : cut.side_b)
                if (!b_excluded[v] && !round_used[v]) avail_b.push_back(v);
            if (cfg.b_avail_min_fraction > 0 &&
                avail_b.size() < cfg.b_avail_min_fraction * n) {
                build_note = "B availability below configured fraction";
                break;
            }
            auto drc = drc_path(cut.cross_graph, avail_a, avail_b, ell, m, cfg);
            if (drc.status != DrcStatus::ok) {
                build_note = drc.error();
                break;
            }
            for (VertexId v : drc.path) round_used[v] = 1;
            for (VertexId v : drc.anchors_front) round_used[v] = 1;
            for (VertexId v : drc.anchors_back) round_used[v] = 1;
            structures.push_back({drc.path, drc.anchors_front, drc.anchors_back});
        }

        // Reveal this round's edges and close what we can; path vertices of
        // every built structure stay excluded, anchors are released unless
        // they closed a cycle.
        long long closed_this_round = 0;
        for (const auto& st : structures) {
            for (VertexId v : st.path)
                (std::binary_search(cut.side_a.begin(), cut.side_a.end(), v) ? a_excluded
                                                                             : b_excluded)[v] = 1;
            if (result.packing.size() >= m) continue;
            VertexId cx = -1, cy = -1;
            for (VertexId x : st.front) {
                for (VertexId y : st.back) {
                    if (pg.random_edge_in_round(round, x, y, plan.q)) {
                        cx = x;
                        cy = y;
                        break;
                    }
                }
                if (cx >= 0) break;
            }
            if (cx < 0) continue;
            Cycle c;
            c.vertices.push_back(cx);
            c.vertices.insert(c.vertices.end(), st.path.begin(), st.path.end());
            c.vertices.push_back(cy);
            b_excluded[cx] = 1;
            b_excluded[cy] = 1;
            result.packing.cycles.push_back(std::move(c));
            ++closed_this_round;
        }
        result.stages.push_back({"round_" + std::to_string(round),
                                 static_cast<long long>(plan.s), closed_this_round,
                                 seconds_since(round_start), build_note});
    }

    result.stages.push_back({"total", m, result.packing.size(), seconds_since(start),
                             result.packing.size() < m ? "shortfall" : ""});
    return result;
}

}  // namespace cyclepack
