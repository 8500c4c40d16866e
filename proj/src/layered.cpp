#include "cyclepack/layered.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cyclepack/oracle.hpp"
#include "cyclepack/rng.hpp"

namespace cyclepack {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

LayeredInstance::LayeredInstance(int ell, std::vector<int> layer_sizes)
    : ell_(ell), sizes_(std::move(layer_sizes)) {
    if (ell < 3) throw std::invalid_argument("ell must be at least 3");
    int k = static_cast<int>(sizes_.size()) - 1;
    if (k != 1 && k != ell - 1)
        throw std::invalid_argument("layered instance needs 1 or ell-1 U-layers");
    for (int s : sizes_)
        if (s < 1) throw std::invalid_argument("layer sizes must be at least 1");
    for (int i = 2; i <= k; ++i)
        if (sizes_[i] != sizes_[1]) throw std::invalid_argument("U-layer sizes must be equal");
    int total = std::accumulate(sizes_.begin(), sizes_.end(), 0);
    if (total % ell != 0) throw std::invalid_argument("total vertex count must be divisible by ell");

    starts_.resize(sizes_.size());
    int offset = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        starts_[i] = offset;
        offset += sizes_[i];
    }
    layer_of_.resize(total);
    for (std::size_t i = 0; i < sizes_.size(); ++i)
        for (int j = 0; j < sizes_[i]; ++j) layer_of_[starts_[i] + j] = static_cast<int>(i);
    graph_ = Graph(total);
}

std::vector<VertexId> LayeredInstance::layer_vertices(int layer) const {
    std::vector<VertexId> out(sizes_[layer]);
    std::iota(out.begin(), out.end(), starts_[layer]);
    return out;
}

bool LayeredInstance::pair_allowed(int a, int b) const {
    if (a > b) std::swap(a, b);
    int k = u_layer_count();
    if (a == b) return a == 0;  // internal edges only on V
    if (b == a + 1) return true;
    return a == 0 && b == k;
}

void LayeredInstance::add_edge(VertexId u, VertexId v) {
    if (!pair_allowed(layer_of_[u], layer_of_[v]))
        throw std::invalid_argument("edge between non-adjacent layers");
    if (graph_.add_edge(u, v) && layer_of_[u] == 0 && layer_of_[v] == 0) ++internal_edges_;
}

void LayeredInstance::write(std::ostream& out) const {
    out << ell_;
    for (int s : sizes_) out << ' ' << s;
    out << '\n';
    int k = u_layer_count();
    std::vector<std::pair<int, int>> pairs{{0, 0}, {0, 1}};
    for (int i = 1; i < k; ++i) pairs.emplace_back(i, i + 1);
    if (k > 1) pairs.emplace_back(0, k);
    for (auto [a, b] : pairs) {
        std::vector<std::pair<VertexId, VertexId>> block;
        for (auto [u, v] : graph_.edges()) {
            int lu = layer_of_[u], lv = layer_of_[v];
            if (lu > lv) std::swap(lu, lv);
            if (lu == a && lv == b) block.emplace_back(u, v);
        }
        if (block.empty() && a == b) continue;
        out << "pair " << a << ' ' << b << ' ' << block.size() << '\n';
        for (auto [u, v] : block) out << u << ' ' << v << '\n';
    }
}

LayeredInstance LayeredInstance::read(std::istream& in) {
    std::string line;
    auto next_line = [&](std::string& s) {
        while (std::getline(in, s)) {
            auto pos = s.find_first_not_of(" \t\r");
            if (pos == std::string::npos || s[pos] == '#') continue;
            return true;
        }
        return false;
    };
    if (!next_line(line)) throw std::runtime_error("layered file: missing size line");
    std::istringstream header(line);
    int ell;
    if (!(header >> ell)) throw std::runtime_error("layered file: bad size line");
    std::vector<int> sizes;
    int s;
    while (header >> s) sizes.push_back(s);
    LayeredInstance inst(ell, sizes);
    while (next_line(line)) {
        std::istringstream block(line);
        std::string tag;
        int a, b;
        long long count;
        if (!(block >> tag >> a >> b >> count) || tag != "pair")
            throw std::runtime_error("layered file: bad block header '" + line + "'");
        for (long long i = 0; i < count; ++i) {
            if (!next_line(line)) throw std::runtime_error("layered file: truncated block");
            std::istringstream edge(line);
            VertexId u, v;
            if (!(edge >> u >> v)) throw std::runtime_error("layered file: bad edge '" + line + "'");
            inst.add_edge(u, v);
        }
    }
    return inst;
}

LayeredInstance build_layered(const LayeredBuildSpec& spec) {
    LayeredInstance inst(spec.ell, spec.layer_sizes);
    int k = inst.u_layer_count();
    auto sample_pair = [&](int la, int lb, double density, std::uint64_t tag) {
        if (density <= 0.0) return;
        auto left = inst.layer_vertices(la);
        auto right = inst.layer_vertices(lb);
        for (VertexId u : left)
            for (VertexId v : right) {
                if (u >= v && la == lb) continue;
                std::uint64_t key = counter_rng::round_key(tag, counter_rng::pair_key(u, v));
                if (counter_rng::uniform(spec.seed, key) < density) inst.add_edge(u, v);
            }
    };
    sample_pair(0, 1, spec.outer_density, 1);
    if (k > 1) sample_pair(0, k, spec.outer_density, 2);
    for (int i = 1; i < k; ++i) sample_pair(i, i + 1, spec.middle_density, 10 + i);
    sample_pair(0, 0, spec.internal_density, 3);
    return inst;
}

SuperRegularityReport superregular_check(const Graph& bipartite, int left_size, double eps,
                                         double d, int samples, std::uint64_t seed) {
    if (eps <= 0.0 || eps >= 1.0 || d <= 0.0 || d >= 1.0)
        throw std::invalid_argument("need eps, d in (0,1)");
    int n = bipartite.vertex_count();
    int right_size = n - left_size;
    if (left_size <= 0 || right_size <= 0) throw std::invalid_argument("empty side");

    SuperRegularityReport report;
    report.eps = eps;
    report.d = d;
    report.samples = samples;

    double min_left = 1.0, min_right = 1.0;
    for (VertexId v = 0; v < left_size; ++v)
        min_left = std::min(min_left, static_cast<double>(bipartite.degree(v)) / right_size);
    for (VertexId v = left_size; v < n; ++v)
        min_right = std::min(min_right, static_cast<double>(bipartite.degree(v)) / left_size);
    report.min_degree_ratio_left = min_left;
    report.min_degree_ratio_right = min_right;
    report.degree_pass = min_left >= d && min_right >= d;

    report.pair_density = static_cast<double>(bipartite.edge_count()) /
                          (static_cast<double>(left_size) * right_size);

    int x_size = std::max<int>(1, static_cast<int>(std::ceil(eps * left_size)));
    int y_size = std::max<int>(1, static_cast<int>(std::ceil(eps * right_size)));
    SeqRng rng(mix64(seed ^ 0x7375627265677aULL));
    std::vector<VertexId> left(left_size), right(right_size);
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), left_size);
    for (int s = 0; s < samples; ++s) {
        rng.shuffle(left);
        rng.shuffle(right);
        long long e = 0;
        for (int i = 0; i < x_size; ++i)
            for (int j = 0; j < y_size; ++j)
                if (bipartite.has_edge(left[i], right[j])) ++e;
        double density = static_cast<double>(e) / (static_cast<double>(x_size) * y_size);
        report.max_density_deviation =
            std::max(report.max_density_deviation, std::abs(density - report.pair_density));
    }
    report.density_pass = report.max_density_deviation <= eps;
    report.pass = report.degree_pass && report.density_pass;
    return report;
}

ThreadRepairResult rotation_repair(const Graph& g, const std::vector<VertexId>& starts,
                                   const std::vector<VertexId>& penults,
                                   std::vector<VertexId>& tails) {
    ThreadRepairResult result;
    std::size_t t = starts.size();
    auto closed = [&](std::size_t i) { return g.has_edge(tails[i], starts[i]); };
    auto count_closed = [&]() {
        int c = 0;
        for (std::size_t i = 0; i < t; ++i)
            if (closed(i)) ++c;
        return c;
    };
    result.closed = count_closed();
    while (true) {
        int best_gain = 0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < t; ++i) {
            for (std::size_t j = i + 1; j < t; ++j) {
                if (!g.has_edge(penults[i], tails[j]) || !g.has_edge(penults[j], tails[i]))
                    continue;
                int before = (closed(i) ? 1 : 0) + (closed(j) ? 1 : 0);
                int after = (g.has_edge(tails[j], starts[i]) ? 1 : 0) +
                            (g.has_edge(tails[i], starts[j]) ? 1 : 0);
                if (after - before > best_gain) {
                    best_gain = after - before;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best_gain <= 0) break;
        std::swap(tails[bi], tails[bj]);
        result.closed += best_gain;
        result.closed_after_swap.push_back(result.closed);
    }
    return result;
}

namespace {

// Cyclic layer-label sequences of length ell with legal consecutive pairs,
// deduplicated up to rotation and reflection, ordered by preference:
// straight (every layer once) first, then by layer coverage.
std::vector<std::vector<int>> candidate_patterns(const LayeredInstance& inst) {
    int ell = inst.ell();
    int k = inst.u_layer_count();
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    std::vector<int> seq(ell);

    auto canonical = [&](const std::vector<int>& s) {
        std::vector<int> best = s;
        std::vector<int> rot = s;
        for (int dir = 0; dir < 2; ++dir) {
            for (int r = 0; r < ell; ++r) {
                std::rotate(rot.begin(), rot.begin() + 1, rot.end());
                if (rot < best) best = rot;
            }
            std::reverse(rot.begin(), rot.end());
        }
        return best;
    };

    auto emit = [&]() {
        if (!inst.pair_allowed(seq[ell - 1], seq[0])) return;
        if (!inst.has_internal_edges()) {
            for (int i = 0; i < ell; ++i)
                if (seq[i] == 0 && seq[(i + 1) % ell] == 0) return;
        }
        auto canon = canonical(seq);
        if (seen.insert(canon).second) out.push_back(canon);
    };

    // Depth-first enumeration over label strings; ell and k are small and
    // the canonical set deduplicates rotations and reflections.
    std::function<void(int)> rec = [&](int pos) {
        if (pos == ell) {
            emit();
            return;
        }
        for (int label = 0; label <= k; ++label) {
            if (pos > 0 && !inst.pair_allowed(seq[pos - 1], label)) continue;
            seq[pos] = label;
            rec(pos + 1);
        }
    };
    rec(0);

    std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        auto distinct = [&](const std::vector<int>& s) {
            return std::set<int>(s.begin(), s.end()).size();
        };
        bool a_straight = distinct(a) == static_cast<std::size_t>(ell);
        bool b_straight = distinct(b) == static_cast<std::size_t>(ell);
        if (a_straight != b_straight) return a_straight;
        auto da = distinct(a), db = distinct(b);
        if (da != db) return da > db;
        return a < b;
    });
    return out;
}

// One cycle matching the label pattern among unused vertices, by seeded DFS.
// forced_first >= 0 pins the first vertex (its layer must match pattern[0]).
std::optional<Cycle> realize_pattern(const LayeredInstance& inst, const std::vector<int>& pattern,
                                     std::vector<char>& used, SeqRng& rng,
                                     std::uint64_t budget = 50000, VertexId forced_first = -1) {
    const Graph& g = inst.graph();
    int ell = inst.ell();
    std::vector<VertexId> path;
    path.reserve(ell);

    std::function<bool(int)> extend = [&](int pos) -> bool {
        if (budget == 0) return false;
        --budget;
        if (pos == ell) return g.has_edge(path.back(), path.front());
        std::vector<VertexId> candidates;
        if (pos == 0) {
            if (forced_first >= 0) {
                candidates.push_back(forced_first);
            } else {
                for (VertexId v : inst.layer_vertices(pattern[0]))
                    if (!used[v]) candidates.push_back(v);
            }
        } else {
            for (VertexId w : g.neighbors(path.back()))
                if (!used[w] && inst.layer_of(w) == pattern[pos]) candidates.push_back(w);
        }
        rng.shuffle(candidates);
        for (VertexId v : candidates) {
            path.push_back(v);
            used[v] = 1;
            if (extend(pos + 1)) return true;
            used[v] = 0;
            path.pop_back();
            if (budget == 0) return false;
        }
        return false;
    };
    if (!extend(0)) return std::nullopt;
    Cycle c;
    c.vertices = path;
    return c;
}

// Rotations of a cyclic pattern that put `layer` in front; legality is
// rotation-invariant.
std::vector<std::vector<int>> rotations_starting_at(const std::vector<int>& pattern, int layer) {
    std::vector<std::vector<int>> out;
    int ell = static_cast<int>(pattern.size());
    for (int r = 0; r < ell; ++r) {
        if (pattern[r] != layer) continue;
        std::vector<int> rotated(ell);
        for (int i = 0; i < ell; ++i) rotated[i] = pattern[(r + i) % ell];
        out.push_back(std::move(rotated));
    }
    return out;
}

// Maximum bipartite matching (Kuhn) from `left` into `right`, randomized
// left order; returns per-left matched partner or -1.
std::vector<VertexId> kuhn_matching(const Graph& g, const std::vector<VertexId>& left,
                                    const std::vector<VertexId>& right, SeqRng& rng) {
    int n = g.vertex_count();
    std::vector<int> left_index(n, -1), right_index(n, -1);
    for (std::size_t i = 0; i < left.size(); ++i) left_index[left[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < right.size(); ++i) right_index[right[i]] = static_cast<int>(i);

    std::vector<int> match_right(right.size(), -1);  // right slot -> left slot
    std::vector<int> match_left(left.size(), -1);
    std::vector<char> visited(right.size(), 0);

    std::function<bool(int)> augment = [&](int li) -> bool {
        for (VertexId w : g.neighbors(left[li])) {
            int ri = right_index[w];
            if (ri < 0 || visited[ri]) continue;
            visited[ri] = 1;
            if (match_right[ri] < 0 || augment(match_right[ri])) {
                match_right[ri] = li;
                match_left[li] = ri;
                return true;
            }
        }
        return false;
    };

    std::vector<int> order(left.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (int li : order) {
        std::fill(visited.begin(), visited.end(), 0);
        augment(li);
    }
    std::vector<VertexId> partner(left.size(), -1);
    for (std::size_t i = 0; i < left.size(); ++i)
        if (match_left[i] >= 0) partner[i] = right[match_left[i]];
    return partner;
}

struct Attempt {
    CyclePacking packing;
    int uncovered = 0;
    bool success = false;
};

Attempt heuristic_attempt(const LayeredInstance& inst,
                          const std::vector<std::vector<int>>& patterns, std::uint64_t seed,
                          bool use_threads) {
    const Graph& g = inst.graph();
    int ell = inst.ell();
    int k = inst.u_layer_count();
    int total = inst.total_vertices();
    SeqRng rng(seed);
    std::vector<char> used(total, 0);
    Attempt attempt;
    attempt.packing.ell = ell;

    auto free_in_layer = [&](int layer) {
        std::vector<VertexId> out;
        for (VertexId v : inst.layer_vertices(layer))
            if (!used[v]) out.push_back(v);
        return out;
    };

    if (use_threads && k == ell - 1) {
        // Surplus V-vertices are routed through internal cycles first.
        int surplus = inst.layer_sizes()[0] - inst.layer_sizes()[1];
        if (surplus > 0 && inst.has_internal_edges()) {
            std::vector<int> internal_pattern(ell, 0);
            for (int i = 0; i < surplus / ell; ++i) {
                auto c = realize_pattern(inst, internal_pattern, used, rng);
                if (!c) break;
                attempt.packing.cycles.push_back(std::move(*c));
            }
        }

        // Layer-aligned threads: chain maximum matchings across consecutive
        // layers, close through the (U_k, V) pair, repair by tail rotations.
        std::vector<std::vector<VertexId>> threads;
        {
            std::vector<VertexId> frontier = free_in_layer(0);
            for (VertexId v : frontier) threads.push_back({v});
            for (int layer = 1; layer <= k; ++layer) {
                std::vector<VertexId> heads;
                for (auto& th : threads)
                    if (static_cast<int>(th.size()) == layer) heads.push_back(th.back());
                auto partner = kuhn_matching(g, heads, free_in_layer(layer), rng);
                std::size_t hi = 0;
                for (auto& th : threads) {
                    if (static_cast<int>(th.size()) != layer) continue;
                    VertexId p = partner[hi++];
                    if (p >= 0) {
                        th.push_back(p);
                        used[p] = 1;
                    }
                }
            }
        }
        std::vector<std::vector<VertexId>> complete;
        for (auto& th : threads) {
            if (static_cast<int>(th.size()) == ell) {
                used[th.front()] = 1;
                complete.push_back(std::move(th));
            } else {
                for (std::size_t i = 1; i < th.size(); ++i) used[th[i]] = 0;  // release
            }
        }
        if (!complete.empty()) {
            std::vector<VertexId> starts, penults, tails;
            for (const auto& th : complete) {
                starts.push_back(th.front());
                penults.push_back(th[ell - 2]);
                tails.push_back(th.back());
            }
            rotation_repair(g, starts, penults, tails);
            for (std::size_t i = 0; i < complete.size(); ++i) {
                auto th = complete[i];
                th.back() = tails[i];
                if (g.has_edge(th.back(), th.front())) {
                    Cycle c;
                    c.vertices = th;
                    attempt.packing.cycles.push_back(std::move(c));
                } else {
                    for (VertexId v : th) used[v] = 0;  // dissolve
                }
            }
        }
    }

    // Pattern-guided cleanup (the whole solve, when threads are off or
    // k == 1). Per step, fitting patterns are ranked by how closely their
    // per-layer consumption tracks the remaining proportions, so no layer
    // is starved.
    auto cleanup = [&]() -> long long {
        while (true) {
            long long free_count = std::count(used.begin(), used.end(), char(0));
            if (free_count == 0) return 0;
            std::vector<int> remaining(k + 1, 0);
            for (VertexId v = 0; v < total; ++v)
                if (!used[v]) ++remaining[inst.layer_of(v)];

            std::vector<std::pair<double, std::size_t>> ranked;
            for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
                std::vector<int> need(k + 1, 0);
                for (int label : patterns[pi]) ++need[label];
                bool fits = true;
                double score = 0.0;
                for (int layer = 0; layer <= k; ++layer) {
                    if (need[layer] > remaining[layer]) fits = false;
                    score += std::abs(need[layer] -
                                      static_cast<double>(ell) * remaining[layer] / free_count);
                }
                if (fits) ranked.emplace_back(score, pi);
            }
            std::stable_sort(ranked.begin(), ranked.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });

            bool advanced = false;
            for (auto [score, pi] : ranked) {
                auto c = realize_pattern(inst, patterns[pi], used, rng);
                if (c) {
                    attempt.packing.cycles.push_back(std::move(*c));
                    advanced = true;
                    break;
                }
            }
            if (!advanced) return free_count;
        }
    };

    long long stuck = cleanup();
    // Ruin-and-recreate: dissolve a few committed cycles around a stall and
    // let the pattern loop reassemble them differently. Half the time the
    // dissolved cycle is one blocking a stuck vertex (it holds one of its
    // neighbours), otherwise a uniformly random one.
    for (int repair = 0; repair < 40 && stuck > 0 && !attempt.packing.cycles.empty(); ++repair) {
        auto dissolve_at = [&](std::size_t idx) {
            for (VertexId v : attempt.packing.cycles[idx].vertices) used[v] = 0;
            attempt.packing.cycles.erase(attempt.packing.cycles.begin() + idx);
        };
        std::vector<VertexId> free_vertices;
        for (VertexId v = 0; v < total; ++v)
            if (!used[v]) free_vertices.push_back(v);
        if (!free_vertices.empty() && rng.below(2) == 0) {
            VertexId stuck_v = free_vertices[rng.below(free_vertices.size())];
            std::vector<std::size_t> blocking;
            for (std::size_t i = 0; i < attempt.packing.cycles.size(); ++i)
                for (VertexId v : attempt.packing.cycles[i].vertices)
                    if (g.has_edge(stuck_v, v)) {
                        blocking.push_back(i);
                        break;
                    }
            if (!blocking.empty()) dissolve_at(blocking[rng.below(blocking.size())]);
            // Route a cycle through the stuck vertex before the general pass.
            bool routed = false;
            for (const auto& pattern : patterns) {
                for (const auto& rotated : rotations_starting_at(pattern, inst.layer_of(stuck_v))) {
                    auto c = realize_pattern(inst, rotated, used, rng, 50000, stuck_v);
                    if (c) {
                        attempt.packing.cycles.push_back(std::move(*c));
                        routed = true;
                        break;
                    }
                }
                if (routed) break;
            }
        }
        if (!attempt.packing.cycles.empty()) {
            std::size_t extra = std::min<std::size_t>(attempt.packing.cycles.size(),
                                                      1 + rng.below(2));
            for (std::size_t d = 0; d < extra && !attempt.packing.cycles.empty(); ++d)
                dissolve_at(rng.below(attempt.packing.cycles.size()));
        }
        stuck = cleanup();
    }
    if (stuck > 0) {
        attempt.uncovered = static_cast<int>(stuck);
        return attempt;
    }
    attempt.success = true;
    return attempt;
}

}  // namespace

LayeredResult layered_factor(const LayeredInstance& inst, LayeredMode mode, LayeredOptions opts) {
    auto start = std::chrono::steady_clock::now();
    LayeredResult result;
    int total = inst.total_vertices();
    int target = total / inst.ell();

    if (mode == LayeredMode::exact) {
        if (total > opts.exact_vertex_limit)
            throw std::invalid_argument("exact mode limited to " +
                                        std::to_string(opts.exact_vertex_limit) + " vertices");
        OracleOptions oracle_opts;
        oracle_opts.limit = target;
        oracle_opts.node_budget = opts.oracle_node_budget;
        auto oracle = max_disjoint_cycles_exact(inst.graph(), inst.ell(), oracle_opts);
        if (!oracle.available) {
            result.oracle_unavailable = true;
            result.stages.push_back({"exact", target, 0, seconds_since(start),
                                     oracle.unavailable_reason});
            return result;
        }
        result.oracle_max = oracle.size();
        if (oracle.size() >= target) {
            result.factor = oracle.packing;
        } else {
            result.infeasible_certified = true;
        }
        result.stages.push_back({"exact", target, oracle.size(), seconds_since(start), ""});
        return result;
    }

    auto patterns = candidate_patterns(inst);
    result.best_unclosed = total;
    for (int attempt_index = 0; attempt_index < opts.restarts; ++attempt_index) {
        // Alternate thread-first and pure-pattern attempts.
        auto attempt = heuristic_attempt(inst, patterns,
                                         mix64(opts.seed + 0x9e3779b9U * attempt_index),
                                         attempt_index % 2 == 0);
        ++result.restarts_used;
        if (attempt.success) {
            result.factor = std::move(attempt.packing);
            result.best_unclosed = 0;
            break;
        }
        result.best_unclosed = std::min(result.best_unclosed, attempt.uncovered);
    }
    result.stages.push_back({"heuristic", target,
                             result.factor ? result.factor->size() : 0, seconds_since(start),
                             result.factor ? "" : "uncovered " + std::to_string(result.best_unclosed)});
    return result;
}

}  // namespace cyclepack
