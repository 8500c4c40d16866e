#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cyclepack/packer.hpp"
#include "cyclepack/rng.hpp"

namespace cyclepack {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

long long active_edge_count(const Graph& g, const std::vector<char>& active) {
    long long e = 0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        if (!active[u]) continue;
        for (VertexId v : g.neighbors(u))
            if (v > u && active[v]) ++e;
    }
    return e;
}

}  // namespace

PackResult even_greedy_pack(const Graph& g_union, int ell, long long m, const PackerConfig& cfg) {
    if (ell < 4 || ell % 2 != 0) throw std::invalid_argument("even_greedy_pack needs even ell >= 4");
    auto start = std::chrono::steady_clock::now();
    PackResult result;
    result.packing.ell = ell;
    std::vector<char> active(g_union.vertex_count(), 1);
    std::string note;
    while (result.packing.size() < m) {
        std::uint64_t budget = cfg.cycle_search_budget;
        auto cycle = find_one_cycle(g_union, ell, active, &budget);
        if (!cycle) {
            // Certificate at failure: a residual graph with more than
            // K v^{1+2/ell} edges still contains a C_ell.
            long long v_left = std::count(active.begin(), active.end(), char(1));
            long long e_left = active_edge_count(g_union, active);
            double turan = cfg.even_turan_constant *
                           std::pow(static_cast<double>(v_left), 1.0 + 2.0 / ell);
            note = "e(G')=" + std::to_string(e_left) +
                   " turan_bound=" + std::to_string(turan) +
                   (budget == 0 ? " (search budget exhausted)" : "");
            break;
        }
        for (VertexId v : cycle->vertices) active[v] = 0;
        result.packing.cycles.push_back(std::move(*cycle));
    }
    result.stages.push_back(
        {"even_greedy", m, result.packing.size(), seconds_since(start), note});
    return result;
}

PackResult even_greedy_pack(const Graph& g_union, int ell, long long m) {
    return even_greedy_pack(g_union, ell, m, PackerConfig::desk(ell));
}

PackResult sublinear_pack(const PerturbedGraph& pg, int m, const PackerConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    int ell = cfg.ell;
    int n = pg.vertex_count();
    PackResult result;
    result.packing.ell = ell;
    if (m <= 0) {
        result.regime = "empty";
        return result;
    }
    if (pg.base().min_degree() < m)
        throw std::invalid_argument("sublinear_pack needs min base degree >= m");

    auto append_stages = [&](const std::string& prefix, const std::vector<StageRecord>& stages) {
        for (StageRecord s : stages) {
            s.stage = prefix + "/" + s.stage;
            result.stages.push_back(std::move(s));
        }
    };

    HighDegreeSplit split = split_high_degree(pg.base(), cfg);
    result.stages.push_back({"split", 0, static_cast<long long>(split.high_degree.size()),
                             seconds_since(start),
                             "rest_min_deg " + std::to_string(split.rest_min_degree) +
                                 " rest_max_deg " + std::to_string(split.rest_max_degree)});

    if (static_cast<long long>(split.high_degree.size()) >= m) {
        result.regime = "high_degree_cover";
        auto cover = greedy_cover_high_degree(pg, split.high_degree, m, cfg);
        append_stages("cover", cover.stages);
        result.packing = std::move(cover.packing);
        return result;
    }

    long long m_rest = m - static_cast<long long>(split.high_degree.size());
    int n_rest = static_cast<int>(split.rest.size());
    double low_threshold =
        cfg.low_range_coeff * std::pow(std::log(std::max(3.0, static_cast<double>(n))),
                                       cfg.low_range_exponent);
    double sqrt_threshold = cfg.sqrt_range_multiplier * std::sqrt(std::max(0.0, double(n_rest)));

    if (n_rest == 0) {
        result.regime = "high_degree_cover";
    } else if (static_cast<double>(m_rest) < low_threshold) {
        // Bottom range: harvest cycles from the random part alone in a
        // half-size region that avoids V'.
        result.regime = "random_harvest";
        auto stage_start = std::chrono::steady_clock::now();
        std::vector<char> active(n, 0);
        long long region = std::min<long long>(n_rest, n / 2);
        for (long long i = 0; i < region; ++i) active[split.rest[i]] = 1;
        long long found = 0;
        while (found < m_rest) {
            std::uint64_t budget = cfg.cycle_search_budget;
            auto cycle = find_one_cycle(pg.random_part(), ell, active, &budget);
            if (!cycle) break;
            for (VertexId v : cycle->vertices) active[v] = 0;
            result.packing.cycles.push_back(std::move(*cycle));
            ++found;
        }
        result.stages.push_back({"harvest", m_rest, found, seconds_since(stage_start),
                                 found < m_rest ? "shortfall" : ""});
    } else {
        PerturbedGraph sub = pg.induced(split.rest, mix64(pg.seed() ^ 0x73756273656564ULL));
        auto lift = [&](CyclePacking& packing) {
            for (auto& c : packing.cycles)
                for (VertexId& v : c.vertices) v = split.rest[v];
        };
        if (static_cast<double>(m_rest) <= sqrt_threshold) {
            result.regime = "star_chain";
            auto sub_result = star_chain_pack(sub, static_cast<int>(m_rest), cfg);
            lift(sub_result.packing);
            append_stages("star_chain", sub_result.stages);
            result.packing.cycles = std::move(sub_result.packing.cycles);
        } else if (ell % 2 == 0) {
            result.regime = "even_greedy";
            auto sub_result = even_greedy_pack(sub.union_graph(), ell, m_rest, cfg);
            lift(sub_result.packing);
            append_stages("even_greedy", sub_result.stages);
            result.packing.cycles = std::move(sub_result.packing.cycles);
        } else {
            result.regime = "odd_rounds";
            try {
                auto sub_result = odd_rounds_pack(sub, static_cast<int>(m_rest), cfg);
                lift(sub_result.packing);
                append_stages("odd_rounds", sub_result.stages);
                result.packing.cycles = std::move(sub_result.packing.cycles);
            } catch (const std::invalid_argument& e) {
                result.stages.push_back({"odd_rounds", m_rest, 0, 0.0, e.what()});
            }
        }
    }

    // Top up with the high-degree vertices.
    long long remaining = m - result.packing.size();
    if (remaining > 0 && !split.high_degree.empty()) {
        result.regime += "+cover";
        auto cover = greedy_cover_high_degree(pg, split.high_degree, remaining, cfg,
                                              result.packing.covered_vertices());
        append_stages("cover", cover.stages);
        for (auto& c : cover.packing.cycles) result.packing.cycles.push_back(std::move(c));
    }

    result.stages.push_back({"total", m, result.packing.size(), seconds_since(start),
                             result.packing.size() < m ? "shortfall" : ""});
    return result;
}

}  // namespace cyclepack
