#include "cyclepack/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cyclepack/graph_io.hpp"
#include "cyclepack/layered.hpp"
#include "cyclepack/oracle.hpp"
#include "cyclepack/rng.hpp"
#include "cyclepack/stability.hpp"
#include "cyclepack/threshold.hpp"

namespace cyclepack {

namespace {

using nlohmann::json;

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Shortfall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_keys(const json& obj, const std::string& where,
                  const std::vector<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ValidationError("unknown key '" + where + "." + it.key() + "'");
    }
}

template <typename T>
T typed(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw ValidationError("missing key '" + where + "." + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError("type mismatch at '" + where + "." + key + "'");
    }
}

template <typename T>
T typed_or(const json& obj, const std::string& where, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    return typed<T>(obj, where, key);
}

Rational rational_field(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw ValidationError("missing key '" + where + "." + key + "'");
    const json& v = obj.at(key);
    try {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long long>());
        if (v.is_number_float()) return Rational::parse(std::to_string(v.get<double>()));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string(e.what()) + " at '" + where + "." + key + "'");
    }
    throw ValidationError("type mismatch at '" + where + "." + key + "'");
}

ConstructionSpec parse_construction(const json& obj, const std::string& where) {
    require_keys(obj, where, {"kind", "n", "ell", "alpha", "p", "m", "class_sizes"});
    ConstructionSpec spec;
    try {
        spec.kind = ConstructionSpec::kind_from_name(typed<std::string>(obj, where, "kind"));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string(e.what()) + " at '" + where + ".kind'");
    }
    spec.n = typed_or<int>(obj, where, "n", 0);
    spec.ell = typed_or<int>(obj, where, "ell", 0);
    if (obj.contains("alpha")) spec.alpha = rational_field(obj, where, "alpha");
    spec.p = typed_or<double>(obj, where, "p", 0.0);
    spec.m = typed_or<int>(obj, where, "m", 0);
    spec.class_sizes = typed_or<std::vector<int>>(obj, where, "class_sizes", {});
    return spec;
}

PackerConfig parse_packer_config(const json& obj, const std::string& where, int ell) {
    require_keys(obj, where,
                 {"profile", "high_degree_divisor", "leaf_eps", "star_s", "max_degree_gamma",
                  "enforce_degree_hypotheses", "round_q_constant", "anchor_size_divisor",
                  "astar_degree_divisor", "astar_sample_min", "round_overbuild",
                  "b_avail_min_fraction", "even_turan_constant", "low_range_coeff",
                  "low_range_exponent", "sqrt_range_multiplier", "path_search_budget",
                  "cycle_search_budget"});
    std::string profile = typed_or<std::string>(obj, where, "profile", "desk");
    PackerConfig cfg;
    if (profile == "desk") {
        cfg = PackerConfig::desk(ell);
    } else if (profile == "paper") {
        cfg = PackerConfig::paper(ell);
    } else {
        throw ValidationError("unknown profile at '" + where + ".profile'");
    }
    cfg.high_degree_divisor = typed_or(obj, where, "high_degree_divisor", cfg.high_degree_divisor);
    cfg.leaf_eps = typed_or(obj, where, "leaf_eps", cfg.leaf_eps);
    cfg.star_s = typed_or(obj, where, "star_s", cfg.star_s);
    cfg.max_degree_gamma = typed_or(obj, where, "max_degree_gamma", cfg.max_degree_gamma);
    cfg.enforce_degree_hypotheses =
        typed_or(obj, where, "enforce_degree_hypotheses", cfg.enforce_degree_hypotheses);
    cfg.round_q_constant = typed_or(obj, where, "round_q_constant", cfg.round_q_constant);
    cfg.anchor_size_divisor = typed_or(obj, where, "anchor_size_divisor", cfg.anchor_size_divisor);
    cfg.astar_degree_divisor =
        typed_or(obj, where, "astar_degree_divisor", cfg.astar_degree_divisor);
    cfg.astar_sample_min = typed_or(obj, where, "astar_sample_min", cfg.astar_sample_min);
    cfg.round_overbuild = typed_or(obj, where, "round_overbuild", cfg.round_overbuild);
    cfg.b_avail_min_fraction =
        typed_or(obj, where, "b_avail_min_fraction", cfg.b_avail_min_fraction);
    cfg.even_turan_constant = typed_or(obj, where, "even_turan_constant", cfg.even_turan_constant);
    cfg.low_range_coeff = typed_or(obj, where, "low_range_coeff", cfg.low_range_coeff);
    cfg.low_range_exponent = typed_or(obj, where, "low_range_exponent", cfg.low_range_exponent);
    cfg.sqrt_range_multiplier =
        typed_or(obj, where, "sqrt_range_multiplier", cfg.sqrt_range_multiplier);
    cfg.path_search_budget =
        typed_or<std::uint64_t>(obj, where, "path_search_budget", cfg.path_search_budget);
    cfg.cycle_search_budget =
        typed_or<std::uint64_t>(obj, where, "cycle_search_budget", cfg.cycle_search_budget);
    return cfg;
}

json stages_to_json(const std::vector<StageRecord>& stages) {
    json out = json::array();
    for (const auto& s : stages)
        out.push_back({{"stage", s.stage},
                       {"target", s.target},
                       {"achieved", s.achieved},
                       {"elapsed_s", s.elapsed_s},
                       {"note", s.note}});
    return out;
}

struct Artifact {
    std::string path;
    std::string contents;
};

struct RunContext {
    json resolved;  // full config echoed into artifacts
    std::uint64_t seed = 0;
    std::filesystem::path out_dir;
    int threads = 1;
    std::vector<Artifact> artifacts;
    int exit_code = 0;

    std::string provenance() const {
        return "config: " + resolved.dump() + "\nseed: " + std::to_string(seed);
    }

    void stage_text(const std::string& name, const std::string& contents) {
        artifacts.push_back({(out_dir / name).string(), contents});
    }

    void flush() {
        if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
        for (const auto& a : artifacts) write_file_atomic(a.path, a.contents);
    }
};

Graph load_input_graph(const json& obj, const std::string& where, const RunContext& ctx,
                       std::optional<int>* file_ell = nullptr) {
    bool has_file = obj.contains("graph_in");
    bool has_construction = obj.contains("construction");
    if (has_file == has_construction)
        throw ValidationError("'" + where + "' needs exactly one of graph_in, construction");
    if (has_file) {
        std::string path = typed<std::string>(obj, where, "graph_in");
        if (!std::filesystem::exists(path))
            throw ValidationError("missing file at '" + where + ".graph_in': " + path);
        auto file = read_graph_file(path);
        if (file_ell) *file_ell = file.ell;
        return file.graph;
    }
    return parse_construction(obj.at("construction"), where + ".construction").build(ctx.seed);
}

void run_generate(const json& cmd, RunContext& ctx) {
    require_keys(cmd, "generate", {"construction", "graph_out", "ell"});
    auto spec = parse_construction(cmd.at("construction"), "generate.construction");
    Graph g = spec.build(ctx.seed);
    std::optional<int> ell;
    if (cmd.contains("ell")) ell = typed<int>(cmd, "generate", "ell");
    std::ostringstream out;
    write_graph(out, g, ell, ctx.provenance());
    ctx.stage_text(typed<std::string>(cmd, "generate", "graph_out"), out.str());
}

void run_oracle(const json& cmd, RunContext& ctx) {
    require_keys(cmd, "oracle",
                 {"graph_in", "construction", "ell", "limit", "node_budget", "packing_out",
                  "report_out"});
    std::optional<int> file_ell;
    Graph g = load_input_graph(cmd, "oracle", ctx, &file_ell);
    int ell = cmd.contains("ell") ? typed<int>(cmd, "oracle", "ell") : file_ell.value_or(0);
    if (ell < 3) throw ValidationError("oracle.ell must be at least 3");
    OracleOptions opts;
    if (cmd.contains("limit")) opts.limit = typed<int>(cmd, "oracle", "limit");
    opts.node_budget = typed_or<std::uint64_t>(cmd, "oracle", "node_budget", opts.node_budget);

    auto result = max_disjoint_cycles_exact(g, ell, opts);
    json report;
    report["available"] = result.available;
    report["size"] = result.size();
    report["nodes"] = result.nodes;
    report["reached_limit"] = result.reached_limit;
    if (!result.available) report["unavailable_reason"] = result.unavailable_reason;
    report["resolved_config"] = ctx.resolved;
    if (cmd.contains("report_out"))
        ctx.stage_text(typed<std::string>(cmd, "oracle", "report_out"), report.dump(2) + "\n");
    if (cmd.contains("packing_out")) {
        std::ostringstream out;
        write_packing(out, result.packing, ctx.provenance());
        ctx.stage_text(typed<std::string>(cmd, "oracle", "packing_out"), out.str());
    }
    if (!result.available) throw Shortfall("oracle unavailable: " + result.unavailable_reason);
}

void run_pack(const json& cmd, RunContext& ctx) {
    require_keys(cmd, "pack",
                 {"graph_in", "construction", "ell", "p", "packer", "target", "m",
                  "packer_config", "packing_out", "report_out"});
    Graph g = load_input_graph(cmd, "pack", ctx);
    int ell = typed<int>(cmd, "pack", "ell");
    if (ell < 3) throw ValidationError("pack.ell must be at least 3");
    double p = typed<double>(cmd, "pack", "p");
    PackerChoice packer;
    try {
        packer = packer_from_name(typed<std::string>(cmd, "pack", "packer"));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string(e.what()) + " at 'pack.packer'");
    }
    long long target;
    if (cmd.contains("m")) {
        target = typed<long long>(cmd, "pack", "m");
    } else if (cmd.contains("target") && cmd.at("target").is_string()) {
        if (cmd.at("target").get<std::string>() != "factor")
            throw ValidationError("pack.target must be an integer or \"factor\"");
        target = g.vertex_count() / ell;
    } else {
        target = typed<long long>(cmd, "pack", "target");
    }

    PackerConfig pcfg = PackerConfig::desk(ell);
    if (cmd.contains("packer_config"))
        pcfg = parse_packer_config(cmd.at("packer_config"), "pack.packer_config", ell);
    pcfg.ell = ell;

    PerturbedGraph pg(std::move(g), p, mix64(ctx.seed ^ 0x7061636bULL));
    PackResult result;
    result.packing.ell = ell;
    bool oracle_ok = true;
    std::string oracle_reason;
    switch (packer) {
        case PackerChoice::oracle: {
            OracleOptions opts;
            opts.limit = static_cast<int>(target);
            auto oracle = max_disjoint_cycles_exact(pg.union_graph(), ell, opts);
            oracle_ok = oracle.available;
            oracle_reason = oracle.unavailable_reason;
            result.packing = oracle.packing;
            result.regime = "oracle";
            break;
        }
        case PackerChoice::sublinear:
            result = sublinear_pack(pg, static_cast<int>(std::min<long long>(
                                            target, pg.base().min_degree())),
                                    pcfg);
            break;
        case PackerChoice::star_chain:
            result = star_chain_pack(pg, static_cast<int>(target), pcfg);
            break;
        case PackerChoice::odd_rounds:
            result = odd_rounds_pack(pg, static_cast<int>(target), pcfg);
            break;
        case PackerChoice::even_greedy:
            result = even_greedy_pack(pg.union_graph(), ell, target, pcfg);
            break;
        case PackerChoice::greedy_high_degree: {
            auto split = split_high_degree(pg.base(), pcfg);
            result = greedy_cover_high_degree(pg, split.high_degree, target, pcfg);
            break;
        }
    }

    auto verification = verify_packing(pg.union_graph(), result.packing);
    json report;
    report["target"] = target;
    report["achieved"] = result.size();
    report["success"] = oracle_ok && result.size() >= target;
    report["regime"] = result.regime;
    report["packer"] = packer_name(packer);
    report["p"] = p;
    report["verified"] = verification.ok();
    report["stages"] = stages_to_json(result.stages);
    report["feasibility"] =
        cmd.contains("construction")
            ? json::parse(degree_bound_feasibility(
                              parse_construction(cmd.at("construction"), "pack.construction"), ell,
                              ctx.seed)
                              .to_json_string())
            : json();
    if (!oracle_ok) report["oracle_unavailable_reason"] = oracle_reason;
    report["resolved_config"] = ctx.resolved;
    if (cmd.contains("report_out"))
        ctx.stage_text(typed<std::string>(cmd, "pack", "report_out"), report.dump(2) + "\n");
    if (cmd.contains("packing_out")) {
        std::ostringstream out;
        write_packing(out, result.packing, ctx.provenance());
        ctx.stage_text(typed<std::string>(cmd, "pack", "packing_out"), out.str());
    }
    if (!oracle_ok) throw Shortfall("oracle unavailable: " + oracle_reason);
    if (result.size() < target)
        throw Shortfall("packer achieved " + std::to_string(result.size()) + " of " +
                        std::to_string(target));
}

void run_stability(const json& cmd, RunContext& ctx) {
    require_keys(cmd, "stability",
                 {"graph_in", "construction", "alpha", "beta", "mode", "size_rounding",
                  "exhaustive_vertex_limit", "report_out"});
    Graph g = load_input_graph(cmd, "stability", ctx);
    StabilityParams params;
    params.alpha = rational_field(cmd, "stability", "alpha");
    params.beta = rational_field(cmd, "stability", "beta");
    std::string rounding = typed_or<std::string>(cmd, "stability", "size_rounding",
                                                 "floor_inclusive");
    if (rounding == "floor_inclusive") {
        params.rounding = StabilityParams::SizeRounding::floor_inclusive;
    } else if (rounding == "exact") {
        params.rounding = StabilityParams::SizeRounding::exact;
    } else {
        throw ValidationError("unknown value at 'stability.size_rounding'");
    }
    std::string mode = typed<std::string>(cmd, "stability", "mode");
    if (mode != "exhaustive" && mode != "heuristic")
        throw ValidationError("stability.mode must be exhaustive or heuristic");
    StabilitySearchOptions opts;
    opts.exhaustive_vertex_limit =
        typed_or<int>(cmd, "stability", "exhaustive_vertex_limit", opts.exhaustive_vertex_limit);

    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string(e.what()) + " at 'stability'");
    }
    auto cert = find_stable_partition(g, params,
                                      mode == "exhaustive" ? StabilitySearchMode::exhaustive
                                                           : StabilitySearchMode::heuristic,
                                      opts);
    json report;
    report["mode"] = mode;
    report["alpha"] = params.alpha.str();
    report["beta"] = params.beta.str();
    report["stable"] = cert.has_value();
    if (mode == "heuristic" && !cert)
        report["note"] = "heuristic miss is advisory only, not a refutation";
    if (cert) report["certificate"] = json::parse(cert->to_json_string());
    report["resolved_config"] = ctx.resolved;
    ctx.stage_text(typed<std::string>(cmd, "stability", "report_out"), report.dump(2) + "\n");
}

void run_layered(const json& cmd, RunContext& ctx) {
    require_keys(cmd, "layered",
                 {"instance_in", "build", "mode", "restarts", "exact_vertex_limit",
                  "instance_out", "packing_out", "report_out"});
    bool has_file = cmd.contains("instance_in");
    bool has_build = cmd.contains("build");
    if (has_file == has_build)
        throw ValidationError("'layered' needs exactly one of instance_in, build");
    std::optional<LayeredInstance> inst;
    if (has_file) {
        std::string path = typed<std::string>(cmd, "layered", "instance_in");
        if (!std::filesystem::exists(path))
            throw ValidationError("missing file at 'layered.instance_in': " + path);
        std::ifstream in(path);
        inst = LayeredInstance::read(in);
    } else {
        const json& b = cmd.at("build");
        require_keys(b, "layered.build",
                     {"ell", "layer_sizes", "outer_density", "middle_density",
                      "internal_density"});
        LayeredBuildSpec spec;
        spec.ell = typed<int>(b, "layered.build", "ell");
        spec.layer_sizes = typed<std::vector<int>>(b, "layered.build", "layer_sizes");
        spec.outer_density = typed_or(b, "layered.build", "outer_density", 1.0);
        spec.middle_density = typed_or(b, "layered.build", "middle_density", 1.0);
        spec.internal_density = typed_or(b, "layered.build", "internal_density", 0.0);
        spec.seed = ctx.seed;
        try {
            inst = build_layered(spec);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(std::string(e.what()) + " at 'layered.build'");
        }
    }
    std::string mode = typed<std::string>(cmd, "layered", "mode");
    if (mode != "exact" && mode != "heuristic")
        throw ValidationError("layered.mode must be exact or heuristic");
    LayeredOptions opts;
    opts.seed = ctx.seed;
    opts.restarts = typed_or<int>(cmd, "layered", "restarts", opts.restarts);
    opts.exact_vertex_limit =
        typed_or<int>(cmd, "layered", "exact_vertex_limit", opts.exact_vertex_limit);

    auto result = layered_factor(*inst, mode == "exact" ? LayeredMode::exact
                                                        : LayeredMode::heuristic,
                                 opts);
    json report;
    report["mode"] = mode;
    report["total_vertices"] = inst->total_vertices();
    report["target_cycles"] = inst->total_vertices() / inst->ell();
    report["found_factor"] = result.factor.has_value();
    report["infeasible_certified"] = result.infeasible_certified;
    if (result.oracle_max >= 0) report["oracle_max"] = result.oracle_max;
    if (result.oracle_unavailable) report["oracle_unavailable"] = true;
    report["best_unclosed"] = result.best_unclosed;
    report["restarts_used"] = result.restarts_used;
    report["stages"] = stages_to_json(result.stages);
    report["resolved_config"] = ctx.resolved;
    if (cmd.contains("report_out"))
        ctx.stage_text(typed<std::string>(cmd, "layered", "report_out"), report.dump(2) + "\n");
    if (cmd.contains("instance_out")) {
        std::ostringstream out;
        inst->write(out);
        out << "# " << ctx.provenance() << "\n";
        ctx.stage_text(typed<std::string>(cmd, "layered", "instance_out"), out.str());
    }
    if (cmd.contains("packing_out") && result.factor) {
        std::ostringstream out;
        write_packing(out, *result.factor, ctx.provenance());
        ctx.stage_text(typed<std::string>(cmd, "layered", "packing_out"), out.str());
    }
    if (mode == "heuristic" && !result.factor)
        throw Shortfall("layered heuristic left " + std::to_string(result.best_unclosed) +
                        " vertices uncovered");
    if (result.oracle_unavailable) throw Shortfall("layered exact oracle unavailable");
}

void run_sweep(const json& cmd, RunContext& ctx) {
    require_keys(cmd, "sweep",
                 {"construction", "ell", "target", "p_grid", "p_log_multiples", "trials",
                  "packer", "packer_config", "oracle_node_budget", "csv_out", "json_out"});
    SweepConfig cfg;
    cfg.construction = parse_construction(
        cmd.contains("construction") ? cmd.at("construction") : json::object(),
        "sweep.construction");
    cfg.ell = typed<int>(cmd, "sweep", "ell");
    if (cmd.contains("target") && cmd.at("target").is_string()) {
        if (cmd.at("target").get<std::string>() != "factor")
            throw ValidationError("sweep.target must be an integer or \"factor\"");
        cfg.target = -1;
    } else {
        cfg.target = typed_or<long long>(cmd, "sweep", "target", -1);
    }
    bool has_grid = cmd.contains("p_grid");
    bool has_multiples = cmd.contains("p_log_multiples");
    if (has_grid == has_multiples)
        throw ValidationError("'sweep' needs exactly one of p_grid, p_log_multiples");
    if (has_grid) {
        cfg.p_grid = typed<std::vector<double>>(cmd, "sweep", "p_grid");
    } else {
        int n = cfg.construction.n;
        if (n < 3) throw ValidationError("sweep.construction.n required for p_log_multiples");
        for (double c : typed<std::vector<double>>(cmd, "sweep", "p_log_multiples"))
            cfg.p_grid.push_back(std::min(1.0, c * std::log(static_cast<double>(n)) / n));
    }
    cfg.trials = typed<int>(cmd, "sweep", "trials");
    try {
        cfg.packer = packer_from_name(typed<std::string>(cmd, "sweep", "packer"));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string(e.what()) + " at 'sweep.packer'");
    }
    cfg.master_seed = ctx.seed;
    cfg.packer_config = PackerConfig::desk(cfg.ell);
    if (cmd.contains("packer_config"))
        cfg.packer_config = parse_packer_config(cmd.at("packer_config"), "sweep.packer_config",
                                                cfg.ell);
    cfg.oracle_node_budget =
        typed_or<std::uint64_t>(cmd, "sweep", "oracle_node_budget", cfg.oracle_node_budget);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string(e.what()) + " at 'sweep'");
    }

    auto report = sweep(cfg, ctx.threads);
    if (cmd.contains("csv_out")) {
        std::ostringstream out;
        report.write_csv(out, ctx.provenance());
        ctx.stage_text(typed<std::string>(cmd, "sweep", "csv_out"), out.str());
    }
    if (cmd.contains("json_out"))
        ctx.stage_text(typed<std::string>(cmd, "sweep", "json_out"),
                       report.to_json_string(ctx.resolved.dump()) + "\n");
}

void run_witness(const json& cmd, RunContext& ctx) {
    require_keys(cmd, "witness", {"n", "ell", "c", "trials", "report_out"});
    int n = typed<int>(cmd, "witness", "n");
    int ell = typed<int>(cmd, "witness", "ell");
    double c = typed<double>(cmd, "witness", "c");
    int trials = typed<int>(cmd, "witness", "trials");
    if (ell < 3 || n % ell != 0)
        throw ValidationError("witness needs ell >= 3 dividing n");
    auto report = bipartite_witnesses(n, ell, c, trials, ctx.seed);
    ctx.stage_text(typed<std::string>(cmd, "witness", "report_out"),
                   report.to_json_string(ctx.resolved.dump()) + "\n");
}

json parse_override_value(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception&) {
        return json(text);  // unquoted strings
    }
}

void apply_override(json& config, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ValidationError("override must look like key=value: " + assignment);
    std::string path = assignment.substr(0, eq);
    json value = parse_override_value(assignment.substr(eq + 1));
    json* node = &config;
    std::size_t pos = 0;
    while (true) {
        auto dot = path.find('.', pos);
        std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (key.empty()) throw ValidationError("bad override path: " + path);
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

}  // namespace

int run_cli(const CliOptions& options) {
    json config;
    try {
        std::ifstream in(options.config_path);
        if (!in) throw ValidationError("cannot open config file: " + options.config_path);
        try {
            in >> config;
        } catch (const json::exception& e) {
            throw ValidationError("config parse error: " + std::string(e.what()));
        }
        for (const auto& assignment : options.overrides) apply_override(config, assignment);
        if (options.seed) config["seed"] = *options.seed;
        if (options.out_dir) config["out"] = *options.out_dir;
        if (!config.is_object()) throw ValidationError("config root must be an object");

        const std::vector<std::string> subcommands{"generate", "oracle",   "pack",  "stability",
                                                   "layered",  "sweep",    "witness"};
        require_keys(config, "config",
                     {"seed", "out", "threads", "generate", "oracle", "pack", "stability",
                      "layered", "sweep", "witness"});
        std::vector<std::string> present;
        for (const auto& name : subcommands)
            if (config.contains(name)) present.push_back(name);
        if (present.size() != 1)
            throw ValidationError("config must contain exactly one subcommand");

        RunContext ctx;
        ctx.seed = typed_or<std::uint64_t>(config, "config", "seed", 0);
        ctx.threads = options.threads > 0 ? options.threads
                                          : typed_or<int>(config, "config", "threads", 1);
        ctx.out_dir = typed_or<std::string>(config, "config", "out", ".");
        config["seed"] = ctx.seed;
        config["out"] = ctx.out_dir.string();
        ctx.resolved = config;

        const std::string& name = present.front();
        try {
            if (name == "generate") run_generate(config.at(name), ctx);
            else if (name == "oracle") run_oracle(config.at(name), ctx);
            else if (name == "pack") run_pack(config.at(name), ctx);
            else if (name == "stability") run_stability(config.at(name), ctx);
            else if (name == "layered") run_layered(config.at(name), ctx);
            else if (name == "sweep") run_sweep(config.at(name), ctx);
            else run_witness(config.at(name), ctx);
        } catch (const Shortfall& e) {
            ctx.flush();  // diagnostics are still written
            std::cerr << "shortfall: " << e.what() << '\n';
            return 3;
        } catch (const std::invalid_argument& e) {
            throw ValidationError(e.what());
        }
        ctx.flush();
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int cli_main(int argc, char** argv) {
    CLI::App app{"cycle packing experiments in randomly perturbed graphs"};
    CliOptions options;
    app.add_option("--config", options.config_path, "JSON experiment config")->required();
    app.add_option("--set", options.overrides,
                   "key=value override (dotted paths, repeatable); beats file values");
    std::string out_dir;
    auto* out_opt = app.add_option("--out", out_dir, "output directory");
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "master seed override");
    app.add_option("--threads", options.threads, "worker threads for sweep trials");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (*out_opt) options.out_dir = out_dir;
    if (*seed_opt) options.seed = seed;
    return run_cli(options);
}

}  // namespace cyclepack
