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

PackerConfig PackerConfig::desk(int ell) {
    PackerConfig cfg;
    cfg.ell = ell;
    cfg.high_degree_divisor = 64.0 * (ell / 2);
    cfg.max_degree_gamma = 1.0 / (32.0 * (ell / 2));
    cfg.even_turan_constant = ell == 4 ? 0.75 : 1.0;
    return cfg;
}

PackerConfig PackerConfig::paper(int ell) {
    PackerConfig cfg = desk(ell);
    cfg.leaf_eps = 0.1;
    cfg.star_s = std::max(1, static_cast<int>(std::ceil(8.0 / (16.0 * ell))));
    cfg.anchor_size_divisor = 16.0;
    cfg.astar_degree_divisor = 16.0;
    cfg.astar_sample_min = 0;
    cfg.round_overbuild = 1.0;
    cfg.b_avail_min_fraction = 0.25;
    cfg.enforce_degree_hypotheses = true;
    cfg.low_range_coeff = 1.0;
    cfg.low_range_exponent = ell;
    cfg.sqrt_range_multiplier = 16.0 * ell;
    return cfg;
}

HighDegreeSplit split_high_degree(const Graph& g, const PackerConfig& cfg) {
    HighDegreeSplit split;
    double threshold = cfg.high_degree_threshold(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        (g.degree(v) >= threshold ? split.high_degree : split.rest).push_back(v);
    split.rest_graph = g.induced(split.rest);
    split.rest_min_degree = split.rest_graph.vertex_count() ? split.rest_graph.min_degree() : 0;
    split.rest_max_degree = split.rest_graph.max_degree();
    return split;
}

namespace {

struct RandomPathSearch {
    const Graph& rnd;
    const std::vector<char>& in_region;
    const std::vector<int>& region_degree;  // random-part degree within region
    int k;
    std::uint64_t budget;
    std::vector<VertexId> path;
    std::vector<char> in_path;

    bool extend() {
        if (budget == 0) return false;
        --budget;
        if (static_cast<int>(path.size()) == k) return true;
        VertexId last = path.back();
        std::vector<VertexId> candidates;
        for (VertexId w : rnd.neighbors(last))
            if (in_region[w] && !in_path[w]) candidates.push_back(w);
        std::sort(candidates.begin(), candidates.end(), [&](VertexId a, VertexId b) {
            if (region_degree[a] != region_degree[b]) return region_degree[a] > region_degree[b];
            return a < b;
        });
        for (VertexId w : candidates) {
            path.push_back(w);
            in_path[w] = 1;
            if (extend()) return true;
            in_path[w] = 0;
            path.pop_back();
            if (budget == 0) return false;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<VertexId>> path_in_random_subgraph(const PerturbedGraph& pg,
                                                             const std::vector<VertexId>& region,
                                                             int k, std::uint64_t budget) {
    if (k < 1) throw std::invalid_argument("path length must be at least 1");
    if (static_cast<int>(region.size()) < k) return std::nullopt;
    int n = pg.vertex_count();
    std::vector<char> in_region(n, 0);
    for (VertexId v : region) in_region[v] = 1;
    if (k == 1) return std::vector<VertexId>{*std::min_element(region.begin(), region.end())};

    const Graph& rnd = pg.random_part();
    std::vector<int> region_degree(n, 0);
    for (VertexId v : region)
        for (VertexId w : rnd.neighbors(v))
            if (in_region[w]) ++region_degree[v];

    std::vector<VertexId> starts = region;
    std::sort(starts.begin(), starts.end(), [&](VertexId a, VertexId b) {
        if (region_degree[a] != region_degree[b]) return region_degree[a] > region_degree[b];
        return a < b;
    });
    RandomPathSearch search{rnd, in_region, region_degree, k, budget, {}, std::vector<char>(n, 0)};
    for (VertexId s : starts) {
        if (region_degree[s] == 0) break;  // sorted: nothing later can extend
        search.path.assign(1, s);
        std::fill(search.in_path.begin(), search.in_path.end(), 0);
        search.in_path[s] = 1;
        if (search.extend()) return search.path;
        if (search.budget == 0) return std::nullopt;
    }
    return std::nullopt;
}

PackResult greedy_cover_high_degree(const PerturbedGraph& pg,
                                    const std::vector<VertexId>& high_degree, long long target,
                                    const PackerConfig& cfg,
                                    const std::vector<VertexId>& excluded) {
    auto start = std::chrono::steady_clock::now();
    PackResult result;
    result.packing.ell = cfg.ell;
    int n = pg.vertex_count();
    std::vector<char> covered(n, 0);
    for (VertexId v : excluded) covered[v] = 1;

    std::vector<VertexId> queue = high_degree;
    std::stable_sort(queue.begin(), queue.end(), [&](VertexId a, VertexId b) {
        return pg.base().degree(a) > pg.base().degree(b);
    });

    for (VertexId v : queue) {
        if (result.packing.size() >= target) break;
        if (covered[v]) continue;
        std::vector<VertexId> region;
        for (VertexId w : pg.base().neighbors(v))
            if (!covered[w]) region.push_back(w);
        auto path = path_in_random_subgraph(pg, region, cfg.ell - 1, cfg.path_search_budget);
        if (!path) continue;  // this vertex's pool only shrinks; drop it
        Cycle c;
        c.vertices.push_back(v);
        c.vertices.insert(c.vertices.end(), path->begin(), path->end());
        covered[v] = 1;
        for (VertexId w : *path) covered[w] = 1;
        result.packing.cycles.push_back(std::move(c));
    }

    result.stages.push_back({"greedy_cover", target, result.packing.size(),
                             seconds_since(start),
                             result.packing.size() < target ? "shortfall" : ""});
    return result;
}

StarFamily star_family(const Graph& g, int m, const PackerConfig& cfg) {
    if (g.vertex_count() == 0 || g.min_degree() < m)
        throw std::invalid_argument("star_family needs min degree >= m");
    if (cfg.enforce_degree_hypotheses &&
        g.max_degree() > cfg.max_degree_gamma * g.vertex_count())
        throw std::invalid_argument("star_family: max degree above gamma * n");

    int n = g.vertex_count();
    StarFamily family;
    family.target_sum_sq = cfg.star_s * cfg.leaf_eps * cfg.leaf_eps * static_cast<double>(n) * m;
    int min_leaves = std::max<long long>(1, static_cast<long long>(std::ceil(cfg.leaf_eps * m)));
    int max_leaves = static_cast<int>(cfg.leaf_eps * std::sqrt(static_cast<double>(n)));
    if (max_leaves < min_leaves) return family;

    std::vector<char> claimed(n, 0);
    std::vector<int> residual(n);
    for (VertexId v = 0; v < n; ++v) residual[v] = g.degree(v);

    while (true) {
        VertexId centre = -1;
        for (VertexId v = 0; v < n; ++v)
            if (!claimed[v] && (centre == -1 || residual[v] > residual[centre])) centre = v;
        if (centre == -1 || residual[centre] < min_leaves) break;

        // Low-residual neighbours first; high-degree ones stay available as
        // future centres.
        std::vector<VertexId> free_neighbors;
        for (VertexId w : g.neighbors(centre))
            if (!claimed[w]) free_neighbors.push_back(w);
        std::stable_sort(free_neighbors.begin(), free_neighbors.end(),
                         [&](VertexId a, VertexId b) { return residual[a] < residual[b]; });
        int take = std::min<int>(static_cast<int>(free_neighbors.size()), max_leaves);
        Star star;
        star.centre = centre;
        star.leaves.assign(free_neighbors.begin(), free_neighbors.begin() + take);
        std::sort(star.leaves.begin(), star.leaves.end());

        claimed[centre] = 1;
        for (VertexId w : star.leaves) claimed[w] = 1;
        for (VertexId w : star.leaves)
            for (VertexId x : g.neighbors(w))
                if (!claimed[x]) --residual[x];
        for (VertexId x : g.neighbors(centre))
            if (!claimed[x]) --residual[x];

        family.achieved_sum_sq += static_cast<double>(take) * take;
        family.stars.push_back(std::move(star));
    }
    return family;
}

ExpanderResult expander_extend(const PerturbedGraph& pg, const std::vector<VertexId>& a,
                               const std::vector<VertexId>& b, std::uint64_t round, double q) {
    if (q < 0) q = pg.p();
    ExpanderResult result;
    for (VertexId w : b) {
        for (VertexId v : a) {
            if (v == w) continue;
            if (pg.random_edge_in_round(round, v, w, q)) {
                result.reached.push_back(w);
                break;
            }
        }
    }
    result.deficient = result.reached.size() < a.size();
    return result;
}

}  // namespace cyclepack
