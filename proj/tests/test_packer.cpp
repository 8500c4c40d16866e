#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"

#include "cyclepack/generators.hpp"
#include "cyclepack/oracle.hpp"
#include "cyclepack/packer.hpp"
#include "cyclepack/rng.hpp"
#include "support/brute_force.hpp"

using namespace cyclepack;
using cyclepack::testing::make_complete;
using cyclepack::testing::make_cycle_graph;

namespace {

Graph star_graph(int n) {
    Graph g(n);
    for (VertexId v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

void check_cycles_verify(const PerturbedGraph& pg, const PackResult& result) {
    CHECK(verify_packing(pg.union_graph(), result.packing).ok());
}

}  // namespace

TEST_CASE("split_high_degree") {
    PackerConfig cfg = PackerConfig::desk(3);

    // 2-regular graph below the n/64 threshold
    auto split = split_high_degree(make_cycle_graph(200), cfg);
    CHECK(split.high_degree.empty());
    CHECK(split.rest_graph.vertex_count() == 200);
    CHECK(split.rest_min_degree == 2);

    // star: only the centre clears the threshold once n > 64
    auto split2 = split_high_degree(star_graph(200), cfg);
    CHECK(split2.high_degree == std::vector<VertexId>{0});
    CHECK(split2.rest_max_degree == 0);

    // K_{20,40} at n=60: every degree clears 60/64
    auto split3 = split_high_degree(complete_multipartite({20, 40}), cfg);
    CHECK(split3.high_degree.size() == 60);
    CHECK(split3.rest.empty());
}

TEST_CASE("path_in_random_subgraph") {
    PerturbedGraph full(Graph(10), 1.0, 1);
    std::vector<VertexId> region{2, 3, 4, 5};
    auto p2 = path_in_random_subgraph(full, region, 2);
    REQUIRE(p2.has_value());
    CHECK(p2->size() == 2);

    PerturbedGraph empty(Graph(10), 0.0, 1);
    CHECK_FALSE(path_in_random_subgraph(empty, region, 2).has_value());

    auto p1 = path_in_random_subgraph(empty, region, 1);
    REQUIRE(p1.has_value());  // a single vertex needs no edges
    CHECK(p1->size() == 1);

    // Monte Carlo: |U| = 30 inside G(60, 0.4), path lengths 2..4
    for (int k = 2; k <= 4; ++k) {
        int ok = 0, seeds = 200;
        std::vector<VertexId> u(30);
        std::iota(u.begin(), u.end(), 10);
        for (int s = 0; s < seeds; ++s) {
            PerturbedGraph pg(Graph(60), 0.4, mix64(100 + s));
            auto path = path_in_random_subgraph(pg, u, k);
            if (!path) continue;
            ++ok;
            // path edges are random-origin and stay inside U
            for (std::size_t i = 0; i + 1 < path->size(); ++i)
                REQUIRE(pg.random_part().has_edge((*path)[i], (*path)[i + 1]));
            for (VertexId v : *path) REQUIRE((v >= 10 && v < 40));
        }
        CHECK(ok >= 198);  // >= 0.99
    }
}

TEST_CASE("greedy_cover_high_degree") {
    PackerConfig cfg = PackerConfig::desk(3);
    PerturbedGraph pg(star_graph(60), 0.5, 42);
    auto split = split_high_degree(pg.base(), cfg);

    auto zero = greedy_cover_high_degree(pg, split.high_degree, 0, cfg);
    CHECK(zero.size() == 0);

    PerturbedGraph dead(star_graph(60), 0.0, 42);
    auto nothing = greedy_cover_high_degree(dead, split.high_degree, 3, cfg);
    CHECK(nothing.size() == 0);
    REQUIRE(!nothing.stages.empty());
    CHECK(nothing.stages.back().note == "shortfall");

    // K_{1,59} with p = 0.5: one cycle through the centre, almost surely
    int ok = 0, seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        PerturbedGraph trial(star_graph(60), 0.5, mix64(4242 + s));
        auto r = greedy_cover_high_degree(trial, {0}, 1, cfg);
        if (r.size() < 1) continue;
        ++ok;
        check_cycles_verify(trial, r);
        CHECK(r.packing.cycles[0].vertices[0] == 0);  // anchored at the centre
    }
    CHECK(ok >= 99);
}

TEST_CASE("greedy cover anchors are distinct high-degree vertices") {
    PackerConfig cfg = PackerConfig::desk(3);
    // two stars sharing no vertices; V' = the two centres (leaves sit below
    // the n/64 threshold once n > 64)
    Graph g(130);
    for (int v = 2; v < 66; ++v) g.add_edge(0, v);
    for (int v = 66; v < 130; ++v) g.add_edge(1, v);
    PerturbedGraph pg(std::move(g), 0.6, 99);
    auto split = split_high_degree(pg.base(), cfg);
    REQUIRE(split.high_degree.size() == 2);
    auto r = greedy_cover_high_degree(pg, split.high_degree, 2, cfg);
    check_cycles_verify(pg, r);
    std::set<VertexId> anchors;
    for (const auto& c : r.packing.cycles) {
        // exactly one V'-vertex per cycle here, the anchor in front
        int high_count = 0;
        for (VertexId v : c.vertices)
            if (v <= 1) ++high_count;
        CHECK(high_count == 1);
        anchors.insert(c.vertices[0]);
    }
    CHECK(anchors.size() == r.packing.cycles.size());
}

TEST_CASE("star_family") {
    PackerConfig cfg = PackerConfig::desk(3);
    CHECK_THROWS_AS(star_family(make_cycle_graph(20), 5, cfg), std::invalid_argument);

    // all residual degrees below ceil(eps * m): empty family, sum 0
    Graph matching(20);
    for (int v = 0; v < 20; v += 2) matching.add_edge(v, v + 1);
    PackerConfig strict = cfg;
    strict.leaf_eps = 2.0;  // ceil(2*1) = 2 leaves required, degree 1 everywhere
    auto fam = star_family(matching, 1, strict);
    CHECK(fam.stars.empty());
    CHECK(fam.achieved_sum_sq == 0.0);

    // a disjoint union of stars K_{1,k} with eps*m <= k <= eps*sqrt(n) is
    // returned wholesale
    int k = 5, copies = 12;
    Graph stars(copies * (k + 1));
    for (int c = 0; c < copies; ++c)
        for (int leaf = 1; leaf <= k; ++leaf) stars.add_edge(c * (k + 1), c * (k + 1) + leaf);
    PackerConfig sf = PackerConfig::desk(3);
    sf.leaf_eps = 0.9;  // leaves in [1, floor(0.9*sqrt(72)) = 7]
    auto whole = star_family(stars, 1, sf);
    CHECK(whole.stars.size() == static_cast<std::size_t>(copies));
    for (const auto& s : whole.stars) CHECK(s.leaf_count() == k);

    // randomized instance: disjointness and leaf bounds hold on every run
    Graph g = min_degree_random(400, 12, 7);
    PackerConfig cfg12 = PackerConfig::desk(3);
    auto family = star_family(g, 12, cfg12);
    CHECK(!family.stars.empty());
    CHECK(family.achieved_sum_sq > 0);
    std::set<VertexId> seen;
    int min_leaves = static_cast<int>(std::ceil(cfg12.leaf_eps * 12));
    int max_leaves = static_cast<int>(cfg12.leaf_eps * std::sqrt(400.0));
    for (const auto& s : family.stars) {
        CHECK(s.leaf_count() >= min_leaves);
        CHECK(s.leaf_count() <= max_leaves);
        REQUIRE(seen.insert(s.centre).second);
        for (VertexId leaf : s.leaves) {
            REQUIRE(seen.insert(leaf).second);
            REQUIRE(g.has_edge(s.centre, leaf));
        }
    }
}

TEST_CASE("expander_extend") {
    PerturbedGraph full(Graph(40), 1.0, 3);
    std::vector<VertexId> a{0, 1, 2}, b;
    for (int v = 10; v < 30; ++v) b.push_back(v);
    auto r = expander_extend(full, a, b);
    CHECK(r.reached.size() == b.size());
    CHECK_FALSE(r.deficient);

    PerturbedGraph none(Graph(40), 0.0, 3);
    auto r0 = expander_extend(none, a, b);
    CHECK(r0.reached.empty());
    CHECK(r0.deficient);

    // Monte Carlo at the expansion lemma's scale: |A| = 5, |B| = 500,
    // p = 27 log(1000)/1000. Only the A-B pairs matter, so the host graph
    // carries just those 505 vertices.
    int deficient = 0, seeds = 500;
    double p = 27.0 * std::log(1000.0) / 1000.0;
    std::vector<VertexId> big_a{0, 1, 2, 3, 4}, big_b;
    for (int v = 5; v < 505; ++v) big_b.push_back(v);
    for (int s = 0; s < seeds; ++s) {
        PerturbedGraph host(Graph(505), p, mix64(31000 + s));
        auto rr = expander_extend(host, big_a, big_b);
        if (rr.deficient) ++deficient;
    }
    CHECK(deficient <= 5);  // rate <= 0.01
}

TEST_CASE("star_chain_pack") {
    // ell = 3 degenerates to stars plus one random edge inside the leaf set
    {
        PackerConfig cfg = PackerConfig::desk(3);
        Graph base = min_degree_random(200, 6, 11);
        PerturbedGraph pg(std::move(base), 0.15, 12);
        auto r = star_chain_pack(pg, 6, cfg);
        check_cycles_verify(pg, r);
        for (const auto& c : r.packing.cycles) {
            REQUIRE(c.vertices.size() == 3);
            // centre first; the two leaves are joined by a random edge
            CHECK(pg.base().has_edge(c.vertices[0], c.vertices[1]));
            CHECK(pg.base().has_edge(c.vertices[0], c.vertices[2]));
            CHECK(pg.random_part().has_edge(c.vertices[1], c.vertices[2]));
        }
    }

    // p = 0: no closings, diagnostics say so
    {
        PackerConfig cfg = PackerConfig::desk(4);
        PerturbedGraph pg(min_degree_random(300, 8, 21), 0.0, 22);
        auto r = star_chain_pack(pg, 8, cfg);
        CHECK(r.size() == 0);
        bool closing_stage_failed = false;
        for (const auto& s : r.stages)
            if ((s.stage == "closings" || s.stage == "chains") && s.achieved == 0)
                closing_stage_failed = true;
        CHECK(closing_stage_failed);
    }

    CHECK_THROWS_AS(
        star_chain_pack(PerturbedGraph(make_cycle_graph(30), 0.5, 1), 5, PackerConfig::desk(3)),
        std::invalid_argument);
}

TEST_CASE("star_chain_pack pilot at ell = 4" * doctest::timeout(120)) {
    PackerConfig cfg = PackerConfig::desk(4);
    double p = 6.0 * std::log(600.0) / 600.0;
    int ok = 0, seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        Graph base = min_degree_random(600, 15, mix64(1000 + s));
        PerturbedGraph pg(std::move(base), p, mix64(5000 + s));
        auto r = star_chain_pack(pg, 15, cfg);
        if (r.size() >= 15) ++ok;
        check_cycles_verify(pg, r);
        // chain edges ride on random-origin pairs; star edges on the base
        for (const auto& c : r.packing.cycles) {
            REQUIRE(c.vertices.size() == 4);
            CHECK(pg.base().has_edge(c.vertices[0], c.vertices[1]));
            CHECK(pg.base().has_edge(c.vertices[0], c.vertices[3]));
            CHECK(pg.random_part().has_edge(c.vertices[1], c.vertices[2]));
            CHECK(pg.random_part().has_edge(c.vertices[2], c.vertices[3]));
        }
    }
    CHECK(ok >= 40);  // >= 80% of 50 seeds
}

TEST_CASE("star chain sets stay pairwise disjoint") {
    PackerConfig cfg = PackerConfig::desk(5);
    Graph base = min_degree_random(500, 10, 31);
    PerturbedGraph pg(std::move(base), 0.08, 32);
    auto r = star_chain_pack(pg, 10, cfg);
    check_cycles_verify(pg, r);
    for (const auto& c : r.packing.cycles) {
        REQUIRE(c.vertices.size() == 5);
        for (std::size_t i = 1; i + 1 < c.vertices.size(); ++i)
            CHECK(pg.random_part().has_edge(c.vertices[i], c.vertices[i + 1]));
    }
}

TEST_CASE("max_cut_bipartition") {
    // bipartite input: the degree guarantee holds at any local optimum
    Graph bip = complete_multipartite({6, 10});
    auto cut = max_cut_bipartition(bip, 77);
    for (VertexId v = 0; v < bip.vertex_count(); ++v)
        CHECK(cut.cross_graph.degree(v) >= (bip.degree(v) + 1) / 2);

    // K_4: everyone keeps at least 2 of 3 neighbours
    auto cut4 = max_cut_bipartition(make_complete(4), 5);
    for (VertexId v = 0; v < 4; ++v) CHECK(cut4.cross_graph.degree(v) >= 2);

    // trajectory is strictly increasing (termination certificate)
    Graph g = min_degree_random(100, 8, 13);
    auto cutg = max_cut_bipartition(g, 14);
    for (std::size_t i = 1; i < cutg.cut_trajectory.size(); ++i)
        CHECK(cutg.cut_trajectory[i] > cutg.cut_trajectory[i - 1]);
    CHECK(cutg.side_a.size() <= cutg.side_b.size());

    // spec-scale check: min_degree_random(200, 20), 20 seeds here
    for (int s = 0; s < 20; ++s) {
        Graph h = min_degree_random(200, 20, mix64(900 + s));
        auto c = max_cut_bipartition(h, mix64(901 + s));
        for (VertexId v = 0; v < 200; ++v)
            REQUIRE(c.cross_graph.degree(v) >= (h.degree(v) + 1) / 2);
    }
}

TEST_CASE("drc_path") {
    PackerConfig cfg = PackerConfig::desk(3);

    // ell = 3: a single path vertex with two disjoint anchor sets
    Graph bip = complete_multipartite({10, 30});
    std::vector<VertexId> a(10), b(30);
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), 10);
    auto r3 = drc_path(bip, a, b, 3, 16, cfg);
    REQUIRE(r3.status == DrcStatus::ok);
    CHECK(r3.path.size() == 1);
    CHECK(r3.anchors_front.size() == 1);
    CHECK(r3.anchors_back.size() == 1);
    CHECK(r3.anchors_front[0] != r3.anchors_back[0]);

    // complete bipartite, ell = 5: always succeeds
    PackerConfig cfg5 = PackerConfig::desk(5);
    Graph big = complete_multipartite({40, 80});
    std::vector<VertexId> aa(40), bb(80);
    std::iota(aa.begin(), aa.end(), 0);
    std::iota(bb.begin(), bb.end(), 40);
    auto r5 = drc_path(big, aa, bb, 5, 32, cfg5);
    REQUIRE(r5.status == DrcStatus::ok);
    CHECK(r5.path.size() == 3);
    // path alternates A,B,A and is a real path
    CHECK(r5.path[0] < 40);
    CHECK(r5.path[1] >= 40);
    CHECK(r5.path[2] < 40);
    CHECK(big.has_edge(r5.path[0], r5.path[1]));
    CHECK(big.has_edge(r5.path[1], r5.path[2]));

    // empty availability: explicit error
    auto bad = drc_path(big, {}, bb, 5, 32, cfg5);
    CHECK(bad.status == DrcStatus::astar_too_small);
    CHECK(!bad.error().empty());
}

TEST_CASE("drc_path pilot on max-cut instances" * doctest::timeout(120)) {
    PackerConfig cfg = PackerConfig::desk(5);
    int ok = 0, seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        Graph g = min_degree_random(800, 60, mix64(2000 + s));
        auto cut = max_cut_bipartition(g, mix64(3000 + s));
        auto r = drc_path(cut.cross_graph, cut.side_a, cut.side_b, 5, 60, cfg);
        if (r.status != DrcStatus::ok) continue;
        ++ok;
        // postconditions: distinct vertices, real path, anchors disjoint
        std::set<VertexId> all(r.path.begin(), r.path.end());
        for (VertexId v : r.anchors_front) REQUIRE(all.insert(v).second);
        for (VertexId v : r.anchors_back) REQUIRE(all.insert(v).second);
        for (std::size_t i = 0; i + 1 < r.path.size(); ++i)
            REQUIRE(cut.cross_graph.has_edge(r.path[i], r.path[i + 1]));
        REQUIRE(r.anchors_front.size() >= static_cast<std::size_t>(std::ceil(60 / cfg.anchor_size_divisor)));
        for (VertexId v : r.anchors_front) REQUIRE(cut.cross_graph.has_edge(r.path.front(), v));
        for (VertexId v : r.anchors_back) REQUIRE(cut.cross_graph.has_edge(r.path.back(), v));
    }
    CHECK(ok >= 45);  // >= 90%
}

TEST_CASE("round plan") {
    PackerConfig cfg = PackerConfig::desk(5);
    // t = 1 whenever m^2 <= 2n, and then s >= m
    RoundPlan p1 = RoundPlan::make(600, 30, cfg);
    CHECK(p1.t == 1);
    CHECK(p1.s >= 30);

    // budget identity: t*q <= C log n / n whenever m >= sqrt(2n)
    for (int n : {400, 900, 2000}) {
        for (int m = static_cast<int>(std::ceil(std::sqrt(2.0 * n))); m < n / 8; m += 17) {
            RoundPlan plan = RoundPlan::make(n, m, cfg);
            CHECK(plan.budget() <= cfg.round_q_constant * std::log(static_cast<double>(n)) / n + 1e-12);
        }
    }
}

TEST_CASE("odd_rounds_pack basics") {
    PackerConfig cfg = PackerConfig::desk(5);
    CHECK_THROWS_AS(odd_rounds_pack(PerturbedGraph(make_complete(40), 0.0, 1), 10, cfg),
                    std::invalid_argument);  // zero budget
    PackerConfig even_cfg = PackerConfig::desk(4);
    CHECK_THROWS_AS(odd_rounds_pack(PerturbedGraph(make_complete(40), 0.5, 1), 5, even_cfg),
                    std::invalid_argument);

    // paper profile enforces the range hypotheses
    PackerConfig paper = PackerConfig::paper(5);
    CHECK_THROWS_AS(odd_rounds_pack(PerturbedGraph(make_complete(40), 0.9, 1), 12, paper),
                    std::invalid_argument);
}

TEST_CASE("odd_rounds_pack pilot" * doctest::timeout(300)) {
    PackerConfig cfg = PackerConfig::desk(5);
    RoundPlan plan = RoundPlan::make(900, 120, cfg);
    double p = std::min(1.0, plan.budget() * 1.05);
    int ok = 0, seeds = 30;
    for (int s = 0; s < seeds; ++s) {
        Graph base = min_degree_random(900, 120, mix64(4000 + s));
        PerturbedGraph pg(std::move(base), p, mix64(8000 + s));
        auto r = odd_rounds_pack(pg, 120, cfg);
        if (r.size() >= 120) ++ok;
        check_cycles_verify(pg, r);
        for (const auto& c : r.packing.cycles) {
            REQUIRE(c.vertices.size() == 5);
            // anchor-to-anchor closing edge is the only non-base pair
            for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i)
                REQUIRE(pg.base().has_edge(c.vertices[i], c.vertices[i + 1]));
        }
    }
    CHECK(ok >= 24);  // >= 80% of 30 seeds
}

TEST_CASE("even_greedy_pack") {
    PackerConfig cfg = PackerConfig::desk(4);
    auto one = even_greedy_pack(complete_multipartite({2, 2}), 4, 5, cfg);
    CHECK(one.size() == 1);

    Graph forest(10);
    forest.add_edge(0, 1);
    forest.add_edge(1, 2);
    forest.add_edge(3, 4);
    auto zero = even_greedy_pack(forest, 4, 3, cfg);
    CHECK(zero.size() == 0);
    REQUIRE(!zero.stages.empty());
    CHECK(zero.stages.back().note.find("turan_bound") != std::string::npos);

    Graph k1010 = complete_multipartite({10, 10});
    auto five = even_greedy_pack(k1010, 4, 5, cfg);
    CHECK(five.size() == 5);
    CHECK(verify_packing(k1010, five.packing).ok());
    auto oracle = max_disjoint_cycles_exact(k1010, 4);
    REQUIRE(oracle.available);
    CHECK(oracle.size() == 5);

    CHECK_THROWS_AS(even_greedy_pack(k1010, 5, 2, PackerConfig::desk(5)), std::invalid_argument);
}

TEST_CASE("sublinear_pack") {
    PackerConfig cfg = PackerConfig::desk(3);

    auto zero = sublinear_pack(PerturbedGraph(make_complete(12), 0.4, 5), 0, cfg);
    CHECK(zero.size() == 0);
    CHECK(zero.regime == "empty");

    // complete base: the dispatcher goes through the high-degree cover and
    // never beats the oracle
    {
        PerturbedGraph pg(make_complete(12), 0.5, 6);
        auto r = sublinear_pack(pg, 4, cfg);
        CHECK(r.regime == "high_degree_cover");
        check_cycles_verify(pg, r);
        CHECK(r.size() == 4);
        auto oracle = max_disjoint_cycles_exact(pg.union_graph(), 3);
        REQUIRE(oracle.available);
        CHECK(r.size() <= oracle.size());
    }

    CHECK_THROWS_AS(sublinear_pack(PerturbedGraph(make_cycle_graph(30), 0.5, 1), 7, cfg),
                    std::invalid_argument);
}

TEST_CASE("sublinear_pack pilot" * doctest::timeout(120)) {
    PackerConfig cfg = PackerConfig::desk(3);
    double p = 6.0 * std::log(600.0) / 600.0;
    int ok = 0, seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        Graph base = min_degree_random(600, 8, mix64(6000 + s));
        PerturbedGraph pg(std::move(base), p, mix64(7000 + s));
        auto r = sublinear_pack(pg, 8, cfg);
        if (r.size() >= 8) ++ok;
        check_cycles_verify(pg, r);
        CHECK(!r.regime.empty());
        CHECK(!r.stages.empty());
    }
    CHECK(ok >= 45);  // >= 90% of 50 seeds
}

TEST_CASE("packers never exceed the oracle on small instances") {
    // even path on K_{4,8}
    PackerConfig cfg4 = PackerConfig::desk(4);
    Graph k48 = complete_multipartite({4, 8});
    auto greedy = even_greedy_pack(k48, 4, 10, cfg4);
    auto oracle = max_disjoint_cycles_exact(k48, 4);
    REQUIRE(oracle.available);
    CHECK(oracle.size() == 2);
    CHECK(greedy.size() <= oracle.size());

    // dispatcher on small complete graphs
    PackerConfig cfg3 = PackerConfig::desk(3);
    for (int s = 0; s < 10; ++s) {
        PerturbedGraph pg(make_complete(12), 0.3, mix64(50 + s));
        auto r = sublinear_pack(pg, 4, cfg3);
        auto opt = max_disjoint_cycles_exact(pg.union_graph(), 3);
        REQUIRE(opt.available);
        CHECK(r.size() <= opt.size());
    }
}
