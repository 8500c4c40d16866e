#include "cyclepack/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cyclepack/rng.hpp"

namespace cyclepack {

PerturbedGraph::PerturbedGraph(Graph base, double p, std::uint64_t seed)
    : base_(std::move(base)), random_part_(gnp(base_.vertex_count(), p, seed)), p_(p),
      seed_(seed), stream_seed_(seed) {
    union_ = Graph::union_of(base_, random_part_);
    stream_ids_.resize(base_.vertex_count());
    for (VertexId v = 0; v < base_.vertex_count(); ++v) stream_ids_[v] = v;
}

PerturbedGraph::PerturbedGraph(Graph base, Graph random_part, double p, std::uint64_t seed)
    : base_(std::move(base)), random_part_(std::move(random_part)), p_(p), seed_(seed),
      stream_seed_(seed) {
    if (base_.vertex_count() != random_part_.vertex_count())
        throw std::invalid_argument("base and random part must share the vertex set");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability out of range");
    union_ = Graph::union_of(base_, random_part_);
    stream_ids_.resize(base_.vertex_count());
    for (VertexId v = 0; v < base_.vertex_count(); ++v) stream_ids_[v] = v;
}

EdgeOrigin PerturbedGraph::origin(VertexId u, VertexId v) const {
    bool in_base = base_.has_edge(u, v);
    bool in_random = random_part_.has_edge(u, v);
    if (in_base && in_random) return EdgeOrigin::both;
    if (in_base) return EdgeOrigin::deterministic;
    if (in_random) return EdgeOrigin::random;
    return EdgeOrigin::none;
}

bool PerturbedGraph::random_edge_in_round(std::uint64_t round, VertexId u, VertexId v,
                                          double q) const {
    if (u == v) return false;
    if (round == 0) return random_part_.has_edge(u, v);
    // The conjunction with the materialized part is redundant for sampled
    // and induced instances (round*q <= p implies membership); it keeps
    // explicitly-assembled instances sound.
    if (!random_part_.has_edge(u, v)) return false;
    std::uint64_t key =
        counter_rng::round_key(0, counter_rng::pair_key(stream_ids_[u], stream_ids_[v]));
    double value = counter_rng::uniform(stream_seed_, key);
    return (round - 1) * q <= value && value < round * q;
}

PerturbedGraph PerturbedGraph::induced(const std::vector<VertexId>& vertices,
                                       std::uint64_t sub_seed) const {
    PerturbedGraph sub(base_.induced(vertices), random_part_.induced(vertices), p_, sub_seed);
    sub.stream_seed_ = stream_seed_;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        sub.stream_ids_[i] = stream_ids_[vertices[i]];
    return sub;
}

Graph complete_multipartite(const std::vector<int>& class_sizes) {
    if (class_sizes.empty()) throw std::invalid_argument("no class sizes given");
    for (int s : class_sizes)
        if (s < 1) throw std::invalid_argument("class sizes must be at least 1");
    int n = std::accumulate(class_sizes.begin(), class_sizes.end(), 0);
    Graph g(n);
    std::vector<int> klass(n);
    int v = 0;
    for (std::size_t c = 0; c < class_sizes.size(); ++c)
        for (int i = 0; i < class_sizes[c]; ++i) klass[v++] = static_cast<int>(c);
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b)
            if (klass[a] != klass[b]) g.add_edge(a, b);
    return g;
}

Graph extremal_even(const Rational& alpha, int n) {
    if (!(Rational(0) < alpha && alpha < Rational(1, 2)))
        throw std::invalid_argument("extremal_even needs 0 < alpha < 1/2");
    Rational small = alpha * n;
    if (!small.is_integer())
        throw std::invalid_argument("alpha*n is not integral: " + small.str());
    int a = static_cast<int>(small.num);
    return complete_multipartite({a, n - a});
}

Graph extremal_odd(const Rational& alpha, int ell, int n) {
    if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("extremal_odd needs odd ell >= 3");
    Rational first = (alpha - Rational(ell - 1, 2 * ell)) * n;
    Rational other = (Rational(1, 2) - alpha * Rational(1, 2) + Rational(ell - 1, 4 * ell)) * n;
    if (!first.is_integer() || !other.is_integer())
        throw std::invalid_argument("class sizes are not integral: " + first.str() + ", " +
                                    other.str());
    if (first.num <= 0 || other.num <= 0)
        throw std::invalid_argument("class size not positive: " + first.str() + ", " + other.str());
    if (!(Rational(1, 2) <= alpha && alpha < Rational(ell + 1, 2 * ell)))
        throw std::invalid_argument("extremal_odd needs 1/2 <= alpha < (ell+1)/(2 ell)");
    return complete_multipartite(
        {static_cast<int>(first.num), static_cast<int>(other.num), static_cast<int>(other.num)});
}

Graph gnp(int n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability out of range");
    Graph g(n);
    if (p == 0.0) return g;
    for (VertexId v = 1; v < n; ++v)
        for (VertexId u = 0; u < v; ++u) {
            if (p < 1.0) {
                std::uint64_t key = counter_rng::round_key(0, counter_rng::pair_key(u, v));
                if (counter_rng::uniform(seed, key) >= p) continue;
            }
            g.add_edge(u, v);
        }
    return g;
}

Graph bipartite_gnp(int u_size, int v_size, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability out of range");
    Graph g(u_size + v_size);
    for (VertexId a = 0; a < u_size; ++a)
        for (VertexId b = u_size; b < u_size + v_size; ++b) {
            std::uint64_t key = counter_rng::round_key(0, counter_rng::pair_key(a, b));
            if (counter_rng::uniform(seed, key) < p) g.add_edge(a, b);
        }
    return g;
}

PerturbedGraph perturb(Graph g, double p, std::uint64_t seed) {
    return PerturbedGraph(std::move(g), p, seed);
}

Graph min_degree_random(int n, int m, std::uint64_t seed, MinDegreeRandomOptions opts) {
    if (m < 0 || m >= n) throw std::invalid_argument("need 0 <= m < n");
    int cap = opts.max_degree_cap < 0 ? n - 1 : opts.max_degree_cap;
    if (cap < m) throw std::invalid_argument("max degree cap below the degree target");

    double base_p = n > 1 ? std::min(1.0, opts.base_density_factor * m / n) : 0.0;
    Graph g = gnp(n, base_p, mix64(seed ^ 0x6d696e646567ULL));

    // Repair pass: lowest-degree deficient vertex first, partner with the
    // lowest degree among non-neighbours below cap; seeded tie-breaks.
    SeqRng rng(mix64(seed ^ 0x726570616972ULL));
    auto pick_least = [&](const std::vector<VertexId>& candidates) {
        int best_deg = n;
        std::vector<VertexId> pool;
        for (VertexId v : candidates) {
            int d = g.degree(v);
            if (d < best_deg) {
                best_deg = d;
                pool.clear();
            }
            if (d == best_deg) pool.push_back(v);
        }
        return pool[rng.below(pool.size())];
    };

    while (true) {
        std::vector<VertexId> deficient;
        for (VertexId v = 0; v < n; ++v)
            if (g.degree(v) < m) deficient.push_back(v);
        if (deficient.empty()) break;
        VertexId v = pick_least(deficient);
        std::vector<VertexId> partners;
        for (VertexId w = 0; w < n; ++w)
            if (w != v && !g.has_edge(v, w) && g.degree(w) < cap) partners.push_back(w);
        if (partners.empty())
            throw std::runtime_error("min_degree_random: no partner available under the cap");
        g.add_edge(v, pick_least(partners));
    }
    return g;
}

Graph ConstructionSpec::build(std::uint64_t seed) const {
    switch (kind) {
        case Kind::complete_bipartite:
            if (class_sizes.size() != 2)
                throw std::invalid_argument("complete_bipartite needs two class sizes");
            return complete_multipartite(class_sizes);
        case Kind::complete_tripartite:
            if (class_sizes.size() != 3)
                throw std::invalid_argument("complete_tripartite needs three class sizes");
            return complete_multipartite(class_sizes);
        case Kind::extremal_even:
            return extremal_even(alpha, n);
        case Kind::extremal_odd:
            return extremal_odd(alpha, ell, n);
        case Kind::bipartite_extremal_log: {
            if (ell < 3 || n % ell != 0)
                throw std::invalid_argument("bipartite_extremal_log needs ell >= 3 dividing n");
            return complete_multipartite({n / ell, n - n / ell});
        }
        case Kind::gnp:
            return gnp(n, p, seed);
        case Kind::min_degree_random:
            return min_degree_random(n, m, seed);
    }
    throw std::logic_error("unknown construction kind");
}

std::string ConstructionSpec::kind_name() const {
    switch (kind) {
        case Kind::complete_bipartite: return "complete_bipartite";
        case Kind::complete_tripartite: return "complete_tripartite";
        case Kind::extremal_even: return "extremal_even";
        case Kind::extremal_odd: return "extremal_odd";
        case Kind::bipartite_extremal_log: return "bipartite_extremal_log";
        case Kind::gnp: return "gnp";
        case Kind::min_degree_random: return "min_degree_random";
    }
    return "unknown";
}

ConstructionSpec::Kind ConstructionSpec::kind_from_name(const std::string& name) {
    if (name == "complete_bipartite") return Kind::complete_bipartite;
    if (name == "complete_tripartite") return Kind::complete_tripartite;
    if (name == "extremal_even") return Kind::extremal_even;
    if (name == "extremal_odd") return Kind::extremal_odd;
    if (name == "bipartite_extremal_log") return Kind::bipartite_extremal_log;
    if (name == "gnp") return Kind::gnp;
    if (name == "min_degree_random") return Kind::min_degree_random;
    throw std::invalid_argument("unknown construction kind: " + name);
}

}  // namespace cyclepack
