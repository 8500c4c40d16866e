#include "doctest.h"

#include "cyclepack/generators.hpp"
#include "cyclepack/oracle.hpp"
#include "cyclepack/rng.hpp"
#include "support/brute_force.hpp"

using namespace cyclepack;
using cyclepack::testing::make_complete;
using cyclepack::testing::make_cycle_graph;

namespace {

Graph random_graph(int n, double density, std::uint64_t seed) {
    SeqRng rng(seed);
    Graph g(n);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (rng.uniform() < density) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("oracle on named graphs") {
    auto check = [](const Graph& g, int ell, int expected) {
        auto r = max_disjoint_cycles_exact(g, ell);
        REQUIRE(r.available);
        CHECK(r.size() == expected);
        CHECK(verify_packing(g, r.packing).ok());
    };
    check(make_complete(6), 3, 2);
    check(complete_multipartite({2, 4}), 3, 0);
    check(make_cycle_graph(6), 3, 0);
    check(make_complete(4), 3, 1);
    check(cyclepack::testing::petersen(), 5, 2);
}

TEST_CASE("oracle equals exhaustive subset search on small random graphs") {
    SeqRng rng(424242);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 4 + static_cast<int>(rng.below(4));
        double density = 0.2 + 0.6 * rng.uniform();
        Graph g = random_graph(n, density, rng.next());
        int ell = 3 + static_cast<int>(rng.below(2));  // 3 or 4
        auto mine = max_disjoint_cycles_exact(g, ell);
        REQUIRE(mine.available);
        CHECK(mine.size() == testing::brute_force_max_disjoint_cycles(g, ell));
        CHECK(verify_packing(g, mine.packing).ok());
    }
}

TEST_CASE("adding an edge never decreases the oracle size") {
    SeqRng rng(515151);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 6;
        Graph g = random_graph(n, 0.4, rng.next());
        auto before = max_disjoint_cycles_exact(g, 3);
        // first missing pair
        for (VertexId u = 0; u < n; ++u) {
            bool done = false;
            for (VertexId v = u + 1; v < n; ++v) {
                if (!g.has_edge(u, v)) {
                    g.add_edge(u, v);
                    done = true;
                    break;
                }
            }
            if (done) break;
        }
        auto after = max_disjoint_cycles_exact(g, 3);
        CHECK(after.size() >= before.size());
    }
}

TEST_CASE("oracle limit stops early") {
    OracleOptions opts;
    opts.limit = 1;
    auto r = max_disjoint_cycles_exact(make_complete(9), 3, opts);
    REQUIRE(r.available);
    CHECK(r.size() == 1);
    CHECK(r.reached_limit);
}

TEST_CASE("exhausted budgets give an explicit unavailable result") {
    // two disjoint K_4 plus isolated vertices: the optimum (2) sits below
    // the n/ell cap (4), so proving it needs search nodes
    Graph g(12);
    for (int base : {0, 4})
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) g.add_edge(base + u, base + v);
    OracleOptions opts;
    opts.node_budget = 1;
    auto r = max_disjoint_cycles_exact(g, 3, opts);
    CHECK_FALSE(r.available);
    CHECK(!r.unavailable_reason.empty());
    auto full = max_disjoint_cycles_exact(g, 3);
    REQUIRE(full.available);
    CHECK(full.size() == 2);

    OracleOptions cap;
    cap.cycle_cap = 3;
    auto r2 = max_disjoint_cycles_exact(make_complete(9), 3, cap);
    CHECK_FALSE(r2.available);
}

TEST_CASE("oracle handles ell larger than n") {
    auto r = max_disjoint_cycles_exact(make_complete(4), 5);
    REQUIRE(r.available);
    CHECK(r.size() == 0);
}
