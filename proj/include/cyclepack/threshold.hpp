#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclepack/generators.hpp"
#include "cyclepack/packer.hpp"
#include "cyclepack/rational.hpp"

namespace cyclepack {

enum class PackerChoice { oracle, sublinear, star_chain, odd_rounds, even_greedy, greedy_high_degree };

std::string packer_name(PackerChoice c);
PackerChoice packer_from_name(const std::string& name);

struct SweepConfig {
    ConstructionSpec construction;
    int ell = 3;
    long long target = -1;  // -1: "factor", i.e. floor(n/ell)
    std::vector<double> p_grid;
    int trials = 1;
    PackerChoice packer = PackerChoice::oracle;
    std::uint64_t master_seed = 0;
    PackerConfig packer_config;
    std::uint64_t oracle_node_budget = 20'000'000;

    bool target_is_factor() const { return target < 0; }
    long long resolved_target(int n) const { return target_is_factor() ? n / ell : target; }
    void validate() const;
};

struct TrialOutcome {
    bool success = false;
    long long achieved = 0;
    long long target = 0;
    bool error = false;
    std::string error_text;
    double elapsed_s = 0.0;
};

// Instance and perturbation seeds derive from (master seed, trial index), so
// a trial uses the same base graph and coupled random edges across the whole
// p grid.
TrialOutcome run_trial(const SweepConfig& cfg, double p, int trial_index);

struct GridPointStats {
    double p = 0.0;
    int trials = 0;
    int successes = 0;
    int errors = 0;
    double freq = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
};

struct SweepReport {
    SweepConfig config;
    std::vector<GridPointStats> points;
    std::optional<double> crossing;  // p where the frequency passes 1/2
    double total_elapsed_s = 0.0;

    // CSV columns: n, ell, alpha, p, trials, successes, freq, lo, hi, packer, seed.
    void write_csv(std::ostream& out, const std::string& comment = {}) const;
    std::string to_json_string(const std::string& resolved_config_json = {}) const;
};

SweepReport sweep(const SweepConfig& cfg, int threads = 1);

// Wilson 95% score interval.
std::pair<double, double> wilson_interval(int successes, int trials);

struct WitnessReport {
    int n = 0;
    int ell = 0;
    double c = 0.0;
    double p = 0.0;
    int trials = 0;
    int a_size = 0;
    int b_size = 0;
    // (a) B-vertices with no random neighbour inside B; (b) cycles fully
    // inside B using random edges only.
    double mean_isolated = 0.0;
    double se_isolated = 0.0;
    double analytic_isolated = 0.0;  // |B| (1-p)^{|B|-1}
    double z_isolated = 0.0;
    double mean_inner_cycles = 0.0;
    double se_inner_cycles = 0.0;
    double analytic_inner_cycles = 0.0;  // expected_cycle_count(|B|, ell, p)
    double z_inner_cycles = 0.0;

    std::string to_json_string(const std::string& resolved_config_json = {}) const;
};

// Lower-bound witness measurements on K_{n/ell, n-n/ell} with p = c log n / n
// (clamped to [0,1]); empirical means come with standard errors against the
// analytic values.
WitnessReport bipartite_witnesses(int n, int ell, double c, int trials, std::uint64_t seed);

struct FeasibilityNote {
    int n = 0;
    int min_degree = 0;
    Rational alpha;              // exact delta(G)/n
    bool el_zahar_guarantee = false;  // delta >= ceil(ell/2) * n / ell
    std::string column;          // regime of the perturbed-threshold table
    std::string threshold_scale;

    std::string to_json_string() const;
};

// Classifies an instance against the deterministic factor bound and the
// perturbed-threshold regimes.
FeasibilityNote degree_bound_feasibility(const ConstructionSpec& construction, int ell,
                                         std::uint64_t seed = 0);

}  // namespace cyclepack
