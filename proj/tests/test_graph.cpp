#include <cmath>

#include "doctest.h"

#include "cyclepack/cycles.hpp"
#include "cyclepack/generators.hpp"
#include "cyclepack/graph.hpp"
#include "cyclepack/rng.hpp"
#include "support/brute_force.hpp"

using namespace cyclepack;
using cyclepack::testing::make_complete;
using cyclepack::testing::make_cycle_graph;

TEST_CASE("graph basics") {
    Graph g(5);
    CHECK(g.add_edge(0, 1));
    CHECK_FALSE(g.add_edge(1, 0));  // duplicate
    CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 5), std::out_of_range);
    g.add_edge(1, 2);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.degree(1) == 2);
    CHECK(g.min_degree() == 0);
    CHECK(g.max_degree() == 2);
    CHECK(g.count_common_neighbors(0, 2) == 1);
}

TEST_CASE("sparse representation beyond the dense bit limit") {
    int n = Graph::kDenseBitLimit + 10;
    Graph g(n);
    g.add_edge(0, n - 1);
    g.add_edge(0, 17);
    g.add_edge(17, n - 1);
    CHECK(g.has_edge(n - 1, 0));
    CHECK_FALSE(g.has_edge(1, 2));
    CHECK(g.count_common_neighbors(0, 17) == 1);
    CHECK(g.common_neighbors(0, 17) == std::vector<VertexId>{n - 1});
}

TEST_CASE("induced subgraph keeps order") {
    Graph g = make_complete(5);
    auto h = g.induced({4, 0, 2});
    CHECK(h.vertex_count() == 3);
    CHECK(h.edge_count() == 3);
    CHECK_THROWS_AS(g.induced({0, 0}), std::invalid_argument);
}

TEST_CASE("cycle canonical form and validation") {
    Graph g = make_cycle_graph(6);
    Cycle c{{2, 1, 0, 5, 4, 3}};
    CHECK(c.valid_in(g));
    Cycle canon = c.canonical();
    CHECK(canon.vertices.front() == 0);
    CHECK(canon.vertices[1] < canon.vertices.back());
    CHECK(canon.canonical().vertices == canon.vertices);

    Cycle repeated{{0, 1, 0}};
    CHECK_FALSE(repeated.valid_in(g));
    Cycle nonedge{{0, 2, 4}};
    CHECK_FALSE(nonedge.valid_in(g));
}

TEST_CASE("enumerate_cycles on named graphs") {
    CHECK(enumerate_cycles(make_complete(4), 3).cycles.size() == 4);
    CHECK(enumerate_cycles(complete_multipartite({2, 4}), 3).cycles.empty());
    CHECK(enumerate_cycles(make_complete(5), 5).cycles.size() == 12);
}

TEST_CASE("enumeration matches the subset-permutation oracle") {
    SeqRng rng(20240811);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + static_cast<int>(rng.below(4));  // 4..7
        Graph g(n);
        for (VertexId u = 0; u < n; ++u)
            for (VertexId v = u + 1; v < n; ++v)
                if (rng.uniform() < 0.5) g.add_edge(u, v);
        for (int ell = 3; ell <= n; ++ell) {
            auto mine = enumerate_cycles(g, ell);
            auto expected = testing::brute_force_cycles(g, ell);
            REQUIRE(mine.cycles.size() == expected.size());
            for (std::size_t i = 0; i < expected.size(); ++i)
                CHECK(mine.cycles[i].vertices == expected[i]);  // both lexicographic
        }
    }
}

TEST_CASE("canonical count formula on complete graphs") {
    for (int n = 3; n <= 8; ++n) {
        Graph g = make_complete(n);
        for (int ell = 3; ell <= n; ++ell) {
            double expected = 1.0;
            for (int i = 0; i < ell; ++i) expected *= n - i;   // falling factorial
            for (int i = 2; i <= ell; ++i) expected /= i;      // / ell!
            for (int i = 2; i < ell; ++i) expected *= i;       // * (ell-1)!
            expected /= 2;
            CHECK(static_cast<double>(enumerate_cycles(g, ell).cycles.size()) ==
                  doctest::Approx(expected));
        }
    }
}

TEST_CASE("enumeration cap sets the truncation flag") {
    auto res = enumerate_cycles(make_complete(8), 3, 5);
    CHECK(res.truncated);
    CHECK(res.cycles.size() == 5);
    auto full = enumerate_cycles(make_complete(8), 3);
    CHECK_FALSE(full.truncated);
    CHECK(full.cycles.size() == 56);
}

TEST_CASE("verify_packing reports each defect kind") {
    Graph k6 = make_complete(6);
    CyclePacking good{3, {Cycle{{0, 1, 2}}, Cycle{{3, 4, 5}}}};
    CHECK(verify_packing(k6, good).ok());

    CyclePacking shared{3, {Cycle{{0, 1, 2}}, Cycle{{2, 3, 4}}}};
    auto report = verify_packing(k6, shared);
    REQUIRE(report.defects.size() == 1);
    CHECK(report.defects[0].kind == PackingDefect::Kind::shared_vertex);
    CHECK(report.defects[0].u == 2);
    CHECK_FALSE(report.defects[0].describe().empty());

    Graph k24 = complete_multipartite({2, 4});
    CyclePacking nonedge{3, {Cycle{{0, 1, 2}}}};  // 0-1 inside the small class
    auto report2 = verify_packing(k24, nonedge);
    REQUIRE(report2.defects.size() == 1);
    CHECK(report2.defects[0].kind == PackingDefect::Kind::missing_edge);

    CyclePacking wrong{4, {Cycle{{0, 1, 2}}}};
    auto report3 = verify_packing(k6, wrong);
    REQUIRE(report3.defects.size() == 1);
    CHECK(report3.defects[0].kind == PackingDefect::Kind::wrong_length);

    CyclePacking repeated{3, {Cycle{{0, 1, 1}}}};
    CHECK_FALSE(verify_packing(k6, repeated).ok());
}

TEST_CASE("expected_cycle_count closed forms") {
    CHECK(expected_cycle_count(5, 5, 1.0) == doctest::Approx(12.0));
    CHECK(expected_cycle_count(9, 4, 0.0) == 0.0);
    CHECK(expected_cycle_count(30, 4, 0.1) == doctest::Approx(8.2215));
    CHECK_THROWS_AS(expected_cycle_count(4, 5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(expected_cycle_count(9, 4, 1.5), std::invalid_argument);
}

TEST_CASE("expected_cycle_count matches sampled averages") {
    // Mean of the C_4 count over G(30, 0.1) samples vs the closed form.
    const int trials = 10000;
    double sum = 0, sumsq = 0;
    for (int t = 0; t < trials; ++t) {
        Graph g = gnp(30, 0.1, mix64(777 + t));
        double c = static_cast<double>(enumerate_cycles(g, 4).cycles.size());
        sum += c;
        sumsq += c * c;
    }
    double mean = sum / trials;
    double var = std::max(0.0, sumsq / trials - mean * mean);
    double se = std::sqrt(var / (trials - 1));
    CHECK(std::abs(mean - 8.2215) <= 4 * se);
}

TEST_CASE("find_one_cycle") {
    Graph forest(6);
    forest.add_edge(0, 1);
    forest.add_edge(1, 2);
    forest.add_edge(3, 4);
    CHECK_FALSE(find_one_cycle(forest, 3, {}).has_value());

    Graph k4 = make_complete(4);
    auto c = find_one_cycle(k4, 3, {});
    REQUIRE(c.has_value());
    CHECK(c->valid_in(k4));

    std::vector<char> active(4, 1);
    active[0] = 0;
    auto c2 = find_one_cycle(k4, 3, active);
    REQUIRE(c2.has_value());
    for (VertexId v : c2->vertices) CHECK(v != 0);
}
