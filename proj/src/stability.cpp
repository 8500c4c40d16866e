#include "cyclepack/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cyclepack {

void StabilityParams::validate() const {
    if (!(Rational(0) < beta && beta < alpha && alpha < Rational(1, 2)))
        throw std::invalid_argument("need 0 < beta < alpha < 1/2");
}

namespace {

struct Measured {
    int n = 0;
    int a_size = 0;
    int b_size = 0;
    int min_cross_degree = 0;
    int deficient_a = 0;
    int deficient_b = 0;
    long long edges_inside_b = 0;
};

Measured measure(const Graph& g, const std::vector<char>& in_a, const StabilityParams& params) {
    Measured m;
    m.n = g.vertex_count();
    for (VertexId v = 0; v < m.n; ++v) (in_a[v] ? m.a_size : m.b_size)++;

    std::vector<int> cross(m.n, 0);
    for (VertexId u = 0; u < m.n; ++u) {
        for (VertexId v : g.neighbors(u)) {
            if (v < u) continue;
            if (in_a[u] != in_a[v]) {
                ++cross[u];
                ++cross[v];
            } else if (!in_a[u]) {
                ++m.edges_inside_b;
            }
        }
    }
    m.min_cross_degree = m.n == 0 ? 0 : *std::min_element(cross.begin(), cross.end());

    Rational beta_n = params.beta * m.n;
    for (VertexId v = 0; v < m.n; ++v) {
        int opposite = in_a[v] ? m.b_size : m.a_size;
        if (Rational(cross[v]) < Rational(opposite) - beta_n) {
            (in_a[v] ? m.deficient_a : m.deficient_b)++;
        }
    }
    return m;
}

// Integer window for a side size under the configured rounding mode.
std::pair<long long, long long> size_window(const Rational& centre, const Rational& beta, int n,
                                            StabilityParams::SizeRounding rounding) {
    Rational lower = (centre - beta) * n;
    Rational upper = (centre + beta) * n;
    if (rounding == StabilityParams::SizeRounding::floor_inclusive) {
        return {lower.floor(), upper.floor()};
    }
    // Exact inclusive ends: smallest/largest integers inside [lower, upper].
    long long lo = lower.floor();
    if (Rational(lo) < lower) ++lo;
    return {lo, upper.floor()};
}

double clause_score(const ClauseResult& c) { return c.pass ? 0.0 : std::max(0.0, -c.margin); }

StabilityCertificate evaluate(const Graph& g, const std::vector<char>& in_a,
                              const StabilityParams& params) {
    Measured m = measure(g, in_a, params);
    StabilityCertificate cert;
    cert.a_size = m.a_size;
    cert.b_size = m.b_size;
    cert.min_cross_degree = m.min_cross_degree;
    cert.deficient_a = m.deficient_a;
    cert.deficient_b = m.deficient_b;
    cert.edges_inside_b = m.edges_inside_b;
    cert.rounding_mode = params.rounding == StabilityParams::SizeRounding::floor_inclusive
                             ? "floor_inclusive"
                             : "exact";
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        (in_a[v] ? cert.side_a : cert.side_b).push_back(v);

    long long n = m.n;
    auto window_clause = [&](const std::string& name, const Rational& centre, int value) {
        auto [lo, hi] = size_window(centre, params.beta, m.n, params.rounding);
        ClauseResult c;
        c.name = name;
        c.measured = value;
        c.threshold = static_cast<double>(lo);
        c.pass = lo <= value && value <= hi;
        c.margin = std::min<double>(value - lo, hi - value);
        return c;
    };
    cert.clauses.push_back(window_clause("size_a", params.alpha, m.a_size));
    cert.clauses.push_back(window_clause("size_b", Rational(1) - params.alpha, m.b_size));

    {
        ClauseResult c;
        c.name = "min_cross_degree";
        Rational threshold = params.alpha * n * Rational(1, 4);
        c.measured = m.min_cross_degree;
        c.threshold = threshold.value();
        c.pass = Rational(m.min_cross_degree) >= threshold;
        c.margin = c.measured - c.threshold;
        cert.clauses.push_back(c);
    }
    Rational beta_n = params.beta * n;
    for (auto [name, count] :
         {std::pair<const char*, int>{"deficient_a", m.deficient_a}, {"deficient_b", m.deficient_b}}) {
        ClauseResult c;
        c.name = name;
        c.measured = count;
        c.threshold = beta_n.value();
        c.pass = Rational(count) <= beta_n;
        c.margin = c.threshold - c.measured;
        cert.clauses.push_back(c);
    }
    {
        ClauseResult c;
        c.name = "edges_inside_b";
        Rational threshold = params.beta * n * n;
        c.measured = static_cast<double>(m.edges_inside_b);
        c.threshold = threshold.value();
        c.pass = Rational(m.edges_inside_b) <= threshold;
        c.margin = c.threshold - c.measured;
        cert.clauses.push_back(c);
    }
    cert.all_pass = std::all_of(cert.clauses.begin(), cert.clauses.end(),
                                [](const ClauseResult& c) { return c.pass; });
    return cert;
}

double violation_score(const StabilityCertificate& cert, int n) {
    double score = 0.0;
    for (const auto& c : cert.clauses) {
        if (c.pass) continue;
        if (c.name == "edges_inside_b") {
            score += clause_score(c) / (static_cast<double>(n) * n);
        } else {
            score += clause_score(c);
        }
    }
    return score;
}

}  // namespace

StabilityCertificate check_partition(const Graph& g, const std::vector<VertexId>& side_a,
                                     const StabilityParams& params) {
    params.validate();
    std::vector<char> in_a(g.vertex_count(), 0);
    for (VertexId v : side_a) {
        if (v < 0 || v >= g.vertex_count()) throw std::out_of_range("vertex id out of range");
        in_a[v] = 1;
    }
    return evaluate(g, in_a, params);
}

std::string StabilityCertificate::to_json_string() const {
    nlohmann::json j;
    j["side_a"] = side_a;
    j["side_b"] = side_b;
    j["a_size"] = a_size;
    j["b_size"] = b_size;
    j["min_cross_degree"] = min_cross_degree;
    j["deficient_a"] = deficient_a;
    j["deficient_b"] = deficient_b;
    j["edges_inside_b"] = edges_inside_b;
    j["all_pass"] = all_pass;
    j["size_rounding"] = rounding_mode;
    for (const auto& c : clauses) {
        j["clauses"].push_back({{"name", c.name},
                                {"pass", c.pass},
                                {"measured", c.measured},
                                {"threshold", c.threshold},
                                {"margin", c.margin}});
    }
    return j.dump(2);
}

namespace {

std::optional<StabilityCertificate> exhaustive_search(const Graph& g,
                                                      const StabilityParams& params,
                                                      const StabilitySearchOptions& opts) {
    int n = g.vertex_count();
    if (n > opts.exhaustive_vertex_limit)
        throw std::invalid_argument("exhaustive mode limited to " +
                                    std::to_string(opts.exhaustive_vertex_limit) + " vertices");
    auto [lo_a, hi_a] = size_window(params.alpha, params.beta, n, params.rounding);
    auto [lo_b, hi_b] = size_window(Rational(1) - params.alpha, params.beta, n, params.rounding);
    lo_a = std::max(lo_a, n - hi_b);
    hi_a = std::min(hi_a, n - lo_b);
    lo_a = std::max(lo_a, 0LL);
    hi_a = std::min(hi_a, static_cast<long long>(n));

    std::vector<char> in_a(n, 0);
    for (long long k = lo_a; k <= hi_a; ++k) {
        // Lexicographically ordered k-combinations; the first passing A wins.
        std::vector<int> pick(k);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::fill(in_a.begin(), in_a.end(), 0);
            for (int v : pick) in_a[v] = 1;
            auto cert = evaluate(g, in_a, params);
            if (cert.all_pass) return cert;
            int i = static_cast<int>(k) - 1;
            while (i >= 0 && pick[i] == n - static_cast<int>(k) + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < static_cast<int>(k); ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return std::nullopt;
}

std::optional<StabilityCertificate> heuristic_search(const Graph& g,
                                                     const StabilityParams& params,
                                                     const StabilitySearchOptions& opts) {
    int n = g.vertex_count();
    Rational an = params.alpha * n;
    long long target = an.floor() + (an.is_integer() ? 0 : 1);  // ceil(alpha n)
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId a, VertexId b) { return g.degree(a) > g.degree(b); });
    std::vector<char> in_a(n, 0);
    for (long long i = 0; i < std::min<long long>(target, n); ++i) in_a[order[i]] = 1;

    auto cert = evaluate(g, in_a, params);
    double score = violation_score(cert, n);
    for (long long step = 0; step < opts.max_moves && score > 0.0; ++step) {
        double best_score = score;
        VertexId best_move = -1;
        for (VertexId v = 0; v < n; ++v) {
            in_a[v] = !in_a[v];
            double s = violation_score(evaluate(g, in_a, params), n);
            in_a[v] = !in_a[v];
            if (s < best_score) {
                best_score = s;
                best_move = v;
            }
        }
        if (best_move < 0) break;  // local optimum
        in_a[best_move] = !in_a[best_move];
        score = best_score;
    }
    if (score > 0.0) return std::nullopt;
    cert = evaluate(g, in_a, params);
    if (!cert.all_pass) return std::nullopt;
    return cert;
}

}  // namespace

std::optional<StabilityCertificate> find_stable_partition(const Graph& g,
                                                          const StabilityParams& params,
                                                          StabilitySearchMode mode,
                                                          StabilitySearchOptions opts) {
    params.validate();
    if (mode == StabilitySearchMode::exhaustive) return exhaustive_search(g, params, opts);
    return heuristic_search(g, params, opts);
}

}  // namespace cyclepack
