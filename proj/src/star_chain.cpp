#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cyclepack/packer.hpp"

namespace cyclepack {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct ChainedStar {
    VertexId centre;
    // levels[0] = A_{K,2}, levels[1..ell-3] = A_{K,3..ell-1}, levels[ell-2] = A_{K,ell}.
    std::vector<std::vector<VertexId>> levels;
    int bucket = 0;
};

}  // namespace

PackResult star_chain_pack(const PerturbedGraph& pg, int m, const PackerConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    const Graph& base = pg.base();
    int n = pg.vertex_count();
    int ell = cfg.ell;
    PackResult result;
    result.packing.ell = ell;
    if (m <= 0) return result;
    if (base.min_degree() < m)
        throw std::invalid_argument("star_chain_pack needs min base degree >= m");

    StarFamily family = star_family(base, m, cfg);
    result.stages.push_back({"stars", m, static_cast<long long>(family.stars.size()),
                             seconds_since(start),
                             "sum_sq " + std::to_string(family.achieved_sum_sq) + " target " +
                                 std::to_string(family.target_sum_sq)});

    // Keep just enough of the family (largest stars first) to meet the
    // squared-sum target; released stars return their vertices to the pool.
    std::vector<const Star*> selected;
    {
        std::vector<const Star*> by_size;
        for (const auto& s : family.stars) by_size.push_back(&s);
        std::stable_sort(by_size.begin(), by_size.end(), [](const Star* a, const Star* b) {
            return a->leaf_count() > b->leaf_count();
        });
        double sum = 0.0;
        for (const Star* s : by_size) {
            if (sum >= family.target_sum_sq && static_cast<int>(selected.size()) >= m) break;
            selected.push_back(s);
            sum += static_cast<double>(s->leaf_count()) * s->leaf_count();
        }
    }

    std::vector<char> in_pool(n, 1);
    std::vector<ChainedStar> chained;
    double eps_m = cfg.leaf_eps * m;
    for (const Star* s : selected) {
        in_pool[s->centre] = 0;
        for (VertexId w : s->leaves) in_pool[w] = 0;
        int g_k = s->leaf_count() & ~1;  // trim to an even leaf count
        if (g_k < 2) continue;
        ChainedStar cs;
        cs.centre = s->centre;
        cs.levels.resize(ell - 1);
        cs.levels.front().assign(s->leaves.begin(), s->leaves.begin() + g_k / 2);
        cs.levels.back().assign(s->leaves.begin() + g_k / 2, s->leaves.begin() + g_k);
        cs.bucket = std::max(1, static_cast<int>(std::floor(std::log2(g_k / eps_m))) + 1);
        chained.push_back(std::move(cs));
    }

    // Grow the chain levels A_{K,3..ell-1} through the unused pool; every
    // level vertex must have a random-edge predecessor one level down.
    auto chain_stage_start = std::chrono::steady_clock::now();
    std::vector<ChainedStar> complete;
    std::vector<VertexId> pool_vec;
    auto rebuild_pool = [&]() {
        pool_vec.clear();
        for (VertexId v = 0; v < n; ++v)
            if (in_pool[v]) pool_vec.push_back(v);
    };
    rebuild_pool();
    for (auto& cs : chained) {
        bool ok = true;
        std::vector<std::vector<VertexId>> claimed_levels;
        for (int level = 1; level + 1 < ell - 1 && ok; ++level) {
            std::size_t want = cs.levels.front().size();
            auto reach = expander_extend(pg, cs.levels[level - 1], pool_vec, 0);
            if (reach.reached.size() < want) {
                ok = false;
                break;
            }
            cs.levels[level].assign(reach.reached.begin(), reach.reached.begin() + want);
            claimed_levels.push_back(cs.levels[level]);
            for (VertexId v : cs.levels[level]) in_pool[v] = 0;
            rebuild_pool();
        }
        if (ok) {
            complete.push_back(cs);
        } else {
            for (const auto& level : claimed_levels)
                for (VertexId v : level) in_pool[v] = 1;
            rebuild_pool();
        }
    }
    result.stages.push_back({"chains", static_cast<long long>(chained.size()),
                             static_cast<long long>(complete.size()),
                             seconds_since(chain_stage_start), ""});

    // Close stars bucket by bucket with one random edge between the two
    // outer levels, then walk the chain back to the leaves.
    auto closing_start = std::chrono::steady_clock::now();
    std::stable_sort(complete.begin(), complete.end(),
                     [](const ChainedStar& a, const ChainedStar& b) { return a.bucket < b.bucket; });
    for (const auto& cs : complete) {
        if (result.packing.size() >= m) break;
        const auto& last_level = cs.levels[ell - 3];  // A_{K,ell-1}; A_{K,2} when ell = 3
        VertexId close_x = -1, close_y = -1;
        for (VertexId x : last_level) {
            for (VertexId y : cs.levels.back()) {
                if (pg.random_edge_in_round(0, x, y, pg.p())) {
                    close_x = x;
                    close_y = y;
                    break;
                }
            }
            if (close_x >= 0) break;
        }
        if (close_x < 0) continue;

        Cycle c;
        c.vertices.push_back(cs.centre);
        if (ell == 3) {
            c.vertices.push_back(close_x);
            c.vertices.push_back(close_y);
        } else {
            // close_x sits in A_{K,ell-1}; pick one random-edge predecessor
            // per level down to A_{K,2}.
            std::vector<VertexId> chain{close_x};
            bool ok = true;
            for (int level = ell - 3; level - 1 >= 0 && ok; --level) {
                VertexId cur = chain.back();
                VertexId pred = -1;
                for (VertexId w : cs.levels[level - 1]) {
                    if (pg.random_edge_in_round(0, w, cur, pg.p())) {
                        pred = w;
                        break;
                    }
                }
                if (pred < 0) {
                    ok = false;  // cannot happen for levels built by expander_extend
                    break;
                }
                chain.push_back(pred);
            }
            if (!ok) continue;
            std::reverse(chain.begin(), chain.end());
            c.vertices.insert(c.vertices.end(), chain.begin(), chain.end());
            c.vertices.push_back(close_y);
        }
        result.packing.cycles.push_back(std::move(c));
    }
    result.stages.push_back({"closings", m, result.packing.size(), seconds_since(closing_start),
                             result.packing.size() < m ? "shortfall" : ""});
    result.stages.push_back({"total", m, result.packing.size(), seconds_since(start), ""});
    return result;
}

}  // namespace cyclepack
