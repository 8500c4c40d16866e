#include "cyclepack/threshold.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cyclepack/cycles.hpp"
#include "cyclepack/oracle.hpp"
#include "cyclepack/rng.hpp"
#include "json.hpp"

namespace cyclepack {

std::string packer_name(PackerChoice c) {
    switch (c) {
        case PackerChoice::oracle: return "oracle";
        case PackerChoice::sublinear: return "sublinear";
        case PackerChoice::star_chain: return "star_chain";
        case PackerChoice::odd_rounds: return "odd_rounds";
        case PackerChoice::even_greedy: return "even_greedy";
        case PackerChoice::greedy_high_degree: return "greedy_high_degree";
    }
    return "unknown";
}

PackerChoice packer_from_name(const std::string& name) {
    if (name == "oracle") return PackerChoice::oracle;
    if (name == "sublinear") return PackerChoice::sublinear;
    if (name == "star_chain") return PackerChoice::star_chain;
    if (name == "odd_rounds") return PackerChoice::odd_rounds;
    if (name == "even_greedy") return PackerChoice::even_greedy;
    if (name == "greedy_high_degree") return PackerChoice::greedy_high_degree;
    throw std::invalid_argument("unknown packer: " + name);
}

void SweepConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (ell < 3) throw std::invalid_argument("ell must be at least 3");
    for (std::size_t i = 1; i < p_grid.size(); ++i)
        if (p_grid[i] <= p_grid[i - 1])
            throw std::invalid_argument("p grid must be strictly increasing");
    for (double p : p_grid)
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("grid probability out of range");
}

TrialOutcome run_trial(const SweepConfig& cfg, double p, int trial_index) {
    auto start = std::chrono::steady_clock::now();
    TrialOutcome outcome;
    std::uint64_t trial_seed = mix64(cfg.master_seed ^ mix64(0x74726961ULL + trial_index));
    try {
        Graph base = cfg.construction.build(trial_seed);
        int n = base.vertex_count();
        outcome.target = cfg.resolved_target(n);
        PerturbedGraph pg(std::move(base), p, mix64(trial_seed ^ 0x70657274ULL));

        PackerConfig pcfg = cfg.packer_config;
        pcfg.ell = cfg.ell;
        long long target = outcome.target;
        switch (cfg.packer) {
            case PackerChoice::oracle: {
                OracleOptions opts;
                opts.limit = static_cast<int>(target);
                opts.decision_only = true;
                opts.node_budget = cfg.oracle_node_budget;
                auto oracle = max_disjoint_cycles_exact(pg.union_graph(), cfg.ell, opts);
                if (!oracle.available) throw std::runtime_error("oracle unavailable: " +
                                                                oracle.unavailable_reason);
                outcome.achieved = oracle.size();
                break;
            }
            case PackerChoice::sublinear: {
                int m = static_cast<int>(std::min<long long>(target, pg.base().min_degree()));
                outcome.achieved = sublinear_pack(pg, m, pcfg).size();
                break;
            }
            case PackerChoice::star_chain:
                outcome.achieved = star_chain_pack(pg, static_cast<int>(target), pcfg).size();
                break;
            case PackerChoice::odd_rounds:
                outcome.achieved = odd_rounds_pack(pg, static_cast<int>(target), pcfg).size();
                break;
            case PackerChoice::even_greedy:
                outcome.achieved = even_greedy_pack(pg.union_graph(), cfg.ell, target, pcfg).size();
                break;
            case PackerChoice::greedy_high_degree: {
                auto split = split_high_degree(pg.base(), pcfg);
                outcome.achieved =
                    greedy_cover_high_degree(pg, split.high_degree, target, pcfg).size();
                break;
            }
        }
        outcome.success = outcome.achieved >= outcome.target;
    } catch (const std::exception& e) {
        outcome.error = true;
        outcome.error_text = e.what();
    }
    outcome.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return outcome;
}

std::pair<double, double> wilson_interval(int successes, int trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 95%
    double n = trials;
    double phat = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double centre = phat + z2 / (2.0 * n);
    double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, (centre - spread) / denom), std::min(1.0, (centre + spread) / denom)};
}

SweepReport sweep(const SweepConfig& cfg, int threads) {
    cfg.validate();
    auto start = std::chrono::steady_clock::now();
    SweepReport report;
    report.config = cfg;

    for (double p : cfg.p_grid) {
        std::vector<TrialOutcome> outcomes(cfg.trials);
        auto run_range = [&](int lo, int hi) {
            for (int t = lo; t < hi; ++t) outcomes[t] = run_trial(cfg, p, t);
        };
        int workers = std::max(1, std::min(threads, cfg.trials));
        if (workers == 1) {
            run_range(0, cfg.trials);
        } else {
            std::vector<std::thread> pool;
            int chunk = (cfg.trials + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                int lo = w * chunk;
                int hi = std::min(cfg.trials, lo + chunk);
                if (lo < hi) pool.emplace_back(run_range, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        GridPointStats stats;
        stats.p = p;
        stats.trials = cfg.trials;
        for (const auto& o : outcomes) {
            if (o.error) ++stats.errors;
            if (o.success) ++stats.successes;
        }
        stats.freq = static_cast<double>(stats.successes) / cfg.trials;
        auto [lo, hi] = wilson_interval(stats.successes, cfg.trials);
        stats.wilson_lo = lo;
        stats.wilson_hi = hi;
        report.points.push_back(stats);
    }

    // Crossing point of the 1/2 frequency level, linearly interpolated
    // between the first bracketing grid points.
    for (std::size_t i = 1; i < report.points.size(); ++i) {
        double f0 = report.points[i - 1].freq;
        double f1 = report.points[i].freq;
        if (f0 < 0.5 && f1 >= 0.5) {
            double p0 = report.points[i - 1].p;
            double p1 = report.points[i].p;
            report.crossing = p0 + (0.5 - f0) / (f1 - f0) * (p1 - p0);
            break;
        }
    }
    report.total_elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

namespace {

// Stable numeric formatting for byte-identical artifacts.
std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

double construction_alpha(const ConstructionSpec& cs, std::uint64_t seed) {
    Graph g = cs.build(mix64(seed ^ mix64(0x74726961ULL)));
    return g.vertex_count() ? static_cast<double>(g.min_degree()) / g.vertex_count() : 0.0;
}

}  // namespace

void SweepReport::write_csv(std::ostream& out, const std::string& comment) const {
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string line;
        while (std::getline(lines, line)) out << "# " << line << '\n';
    }
    out << "n,ell,alpha,p,trials,successes,freq,lo,hi,packer,seed\n";
    double alpha = construction_alpha(config.construction, config.master_seed);
    for (const auto& pt : points) {
        out << config.construction.n << ',' << config.ell << ',' << fmt(alpha) << ','
            << fmt(pt.p) << ',' << pt.trials << ',' << pt.successes << ',' << fmt(pt.freq) << ','
            << fmt(pt.wilson_lo) << ',' << fmt(pt.wilson_hi) << ',' << packer_name(config.packer)
            << ',' << config.master_seed << '\n';
    }
}

std::string SweepReport::to_json_string(const std::string& resolved_config_json) const {
    nlohmann::json j;
    j["construction"] = config.construction.kind_name();
    j["n"] = config.construction.n;
    j["ell"] = config.ell;
    j["target"] = config.target_is_factor() ? "factor" : std::to_string(config.target);
    j["trials"] = config.trials;
    j["packer"] = packer_name(config.packer);
    j["seed"] = config.master_seed;
    j["total_elapsed_s"] = total_elapsed_s;
    for (const auto& pt : points) {
        j["points"].push_back({{"p", pt.p},
                               {"trials", pt.trials},
                               {"successes", pt.successes},
                               {"errors", pt.errors},
                               {"freq", pt.freq},
                               {"wilson_lo", pt.wilson_lo},
                               {"wilson_hi", pt.wilson_hi}});
    }
    if (crossing) j["crossing"] = *crossing;
    if (!resolved_config_json.empty())
        j["resolved_config"] = nlohmann::json::parse(resolved_config_json);
    return j.dump(2);
}

WitnessReport bipartite_witnesses(int n, int ell, double c, int trials, std::uint64_t seed) {
    if (ell < 3 || n % ell != 0) throw std::invalid_argument("need ell >= 3 dividing n");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    WitnessReport report;
    report.n = n;
    report.ell = ell;
    report.c = c;
    report.trials = trials;
    report.a_size = n / ell;
    report.b_size = n - n / ell;
    report.p = std::clamp(c * std::log(static_cast<double>(n)) / n, 0.0, 1.0);

    int b = report.b_size;
    double sum_iso = 0, sumsq_iso = 0, sum_cyc = 0, sumsq_cyc = 0;
    for (int t = 0; t < trials; ++t) {
        // Only the random edges inside B matter for both counts.
        Graph inner = gnp(b, report.p, mix64(seed ^ mix64(0x77697400ULL + t)));
        int isolated = 0;
        for (VertexId v = 0; v < b; ++v)
            if (inner.degree(v) == 0) ++isolated;
        auto cycles = enumerate_cycles(inner, ell);
        double cyc = static_cast<double>(cycles.cycles.size());
        sum_iso += isolated;
        sumsq_iso += static_cast<double>(isolated) * isolated;
        sum_cyc += cyc;
        sumsq_cyc += cyc * cyc;
    }
    auto mean_se = [&](double sum, double sumsq) {
        double mean = sum / trials;
        double var = std::max(0.0, sumsq / trials - mean * mean);
        double se = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
        return std::pair<double, double>(mean, se);
    };
    std::tie(report.mean_isolated, report.se_isolated) = mean_se(sum_iso, sumsq_iso);
    std::tie(report.mean_inner_cycles, report.se_inner_cycles) = mean_se(sum_cyc, sumsq_cyc);

    report.analytic_isolated = b * std::pow(1.0 - report.p, b - 1);
    report.analytic_inner_cycles = expected_cycle_count(b, ell, report.p);
    report.z_isolated = report.se_isolated > 0
                            ? (report.mean_isolated - report.analytic_isolated) / report.se_isolated
                            : (report.mean_isolated == report.analytic_isolated ? 0.0 : HUGE_VAL);
    report.z_inner_cycles =
        report.se_inner_cycles > 0
            ? (report.mean_inner_cycles - report.analytic_inner_cycles) / report.se_inner_cycles
            : (report.mean_inner_cycles == report.analytic_inner_cycles ? 0.0 : HUGE_VAL);
    return report;
}

std::string WitnessReport::to_json_string(const std::string& resolved_config_json) const {
    nlohmann::json j;
    j["n"] = n;
    j["ell"] = ell;
    j["c"] = c;
    j["p"] = p;
    j["trials"] = trials;
    j["a_size"] = a_size;
    j["b_size"] = b_size;
    j["isolated"] = {{"mean", mean_isolated},
                     {"se", se_isolated},
                     {"analytic", analytic_isolated},
                     {"z", z_isolated}};
    j["inner_cycles"] = {{"mean", mean_inner_cycles},
                         {"se", se_inner_cycles},
                         {"analytic", analytic_inner_cycles},
                         {"z", z_inner_cycles}};
    if (!resolved_config_json.empty())
        j["resolved_config"] = nlohmann::json::parse(resolved_config_json);
    return j.dump(2);
}

FeasibilityNote degree_bound_feasibility(const ConstructionSpec& construction, int ell,
                                         std::uint64_t seed) {
    if (ell < 3) throw std::invalid_argument("ell must be at least 3");
    Graph g = construction.build(seed);
    FeasibilityNote note;
    note.n = g.vertex_count();
    note.min_degree = g.min_degree();
    note.alpha = Rational(note.min_degree, std::max(1, note.n));

    // Deterministic factor bound: delta >= ceil(ell/2) * n / ell.
    note.el_zahar_guarantee =
        Rational(note.min_degree) >= Rational(note.n, 1) * Rational((ell + 1) / 2, ell);

    Rational one_over_ell(1, ell);
    Rational upper = ell % 2 == 0 ? Rational(1, 2) : Rational(ell + 1, 2 * ell);
    if (note.alpha.num == 0) {
        note.column = "alpha = 0";
        note.threshold_scale = "n^{-(ell-1)/ell} (log n)^{1/ell}";
    } else if (note.alpha < one_over_ell) {
        note.column = "0 < alpha < 1/ell";
        note.threshold_scale = "n^{-(ell-1)/ell}";
    } else if (note.alpha == one_over_ell) {
        note.column = "alpha = 1/ell";
        note.threshold_scale = "log n / n";
    } else if (note.alpha < upper) {
        note.column = ell % 2 == 0 ? "1/ell < alpha < 1/2" : "1/ell < alpha < (ell+1)/(2 ell)";
        note.threshold_scale = "1/n";
    } else {
        note.column = ell % 2 == 0 ? "alpha >= 1/2" : "alpha >= (ell+1)/(2 ell)";
        note.threshold_scale = "0 (deterministic)";
    }
    return note;
}

std::string FeasibilityNote::to_json_string() const {
    nlohmann::json j;
    j["n"] = n;
    j["min_degree"] = min_degree;
    j["alpha"] = alpha.str();
    j["alpha_value"] = alpha.value();
    j["el_zahar_guarantee"] = el_zahar_guarantee;
    j["column"] = column;
    j["threshold_scale"] = threshold_scale;
    return j.dump(2);
}

}  // namespace cyclepack
