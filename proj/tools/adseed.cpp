// Command line front end: generate graphs, inspect cores, run the seeding
// algorithms, evaluate stored solutions, and drive benchmark configs.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adaseed/bench.hpp"
#include "adaseed/evaluation.hpp"
#include "adaseed/generators.hpp"
#include "adaseed/graph.hpp"
#include "adaseed/greedy.hpp"
#include "adaseed/influence.hpp"
#include "adaseed/instance.hpp"
#include "adaseed/lp.hpp"
#include "adaseed/rng.hpp"
#include "adaseed/solution_io.hpp"

namespace {

using namespace adaseed;

std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::vector<NodeId> read_core_file(const std::string& path, std::size_t node_count) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open core file: " + path);
    std::vector<NodeId> core;
    std::int64_t id;
    while (in >> id) {
        if (id < 0 || static_cast<std::size_t>(id) >= node_count)
            throw std::runtime_error("core id out of range: " + std::to_string(id));
        core.push_back(static_cast<NodeId>(id));
    }
    if (core.empty()) throw std::runtime_error("core file holds no ids");
    std::sort(core.begin(), core.end());
    core.erase(std::unique(core.begin(), core.end()), core.end());
    return core;
}

std::vector<NodeId> sample_core(std::size_t node_count, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::runtime_error("--core-fraction must lie in (0,1]");
    std::size_t want =
        static_cast<std::size_t>(std::round(fraction * static_cast<double>(node_count)));
    want = std::max<std::size_t>(1, std::min(want, node_count));
    std::vector<NodeId> pool(node_count);
    for (NodeId i = 0; i < node_count; ++i) pool[i] = i;
    Rng rng(seed);
    for (std::size_t s = 0; s < want; ++s) {
        std::size_t r = s + rng.below(node_count - s);
        std::swap(pool[s], pool[r]);
    }
    pool.resize(want);
    std::sort(pool.begin(), pool.end());
    return pool;
}

// Options shared by `stats`, `seed` and `eval` for building an instance.
struct InstanceArgs {
    std::string graph_file;
    std::string instance_file;
    std::string core_file;
    double core_fraction = 0.1;
    std::uint64_t core_seed = 1;
    bool exclude_core = false;
    std::string weights = "degree";
    unsigned voter_steps = 50;
    std::string prob_family = "uniform";
    double prob_mean = 0.5;
    std::uint64_t prob_seed = 1;
    double prob_sigma = 0.01;
    double prob_exponent = 2.5;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& a, bool with_instance) {
    if (with_instance)
        cmd->add_option("--instance", a.instance_file,
                        "restore a dumped instance instead of building one");
    cmd->add_option("--graph", a.graph_file, "edge list file");
    cmd->add_option("--core-file", a.core_file, "core ids, one per line");
    cmd->add_option("--core-fraction", a.core_fraction,
                    "random core as a fraction of all nodes (default 0.1)");
    cmd->add_option("--core-seed", a.core_seed, "seed for the random core");
    cmd->add_flag("--exclude-core-from-neighbors", a.exclude_core,
                  "drop core members from the neighbor side");
    cmd->add_option("--weights", a.weights, "degree or voter (default degree)");
    cmd->add_option("--voter-steps", a.voter_steps, "voter weight horizon (default 50)");
    cmd->add_option("--prob-family", a.prob_family,
                    "uniform, beta, normal, power_law or inverse_degree");
    cmd->add_option("--prob-mean", a.prob_mean, "target mean probability (default 0.5)");
    cmd->add_option("--prob-seed", a.prob_seed, "probability assignment seed");
    cmd->add_option("--prob-sigma", a.prob_sigma, "normal family sigma");
    cmd->add_option("--prob-exponent", a.prob_exponent, "power_law family exponent");
}

BipartiteInstance build_from_args(const InstanceArgs& a) {
    if (!a.instance_file.empty()) {
        if (!a.graph_file.empty() || !a.core_file.empty())
            throw std::runtime_error("--instance already fixes the graph and core");
        return restore_instance_file(a.instance_file);
    }
    if (a.graph_file.empty()) throw std::runtime_error("need --graph or --instance");
    Graph g = load_edge_list_file(a.graph_file);
    std::vector<NodeId> core = a.core_file.empty()
                                   ? sample_core(g.node_count(), a.core_fraction, a.core_seed)
                                   : read_core_file(a.core_file, g.node_count());
    std::vector<double> w =
        a.weights == "voter" ? voter_weights(g, a.voter_steps) : degree_weights(g);
    if (a.weights != "voter" && a.weights != "degree")
        throw std::runtime_error("--weights must be degree or voter");
    std::vector<double> p(g.node_count(), 0.0);
    BuildOptions bo;
    bo.exclude_core_from_neighbors = a.exclude_core;
    BipartiteInstance inst = build_instance(g, core, w, p, bo);
    ProbabilityModel pm;
    pm.family = prob_family_from_string(a.prob_family);
    pm.mean = a.prob_mean;
    pm.seed = a.prob_seed;
    pm.normal_sigma = a.prob_sigma;
    pm.power_exponent = a.prob_exponent;
    assign_probabilities(inst, pm);
    return inst;
}

int cmd_generate(const GeneratorSpec& spec, const std::string& out) {
    Graph g = generate(spec);
    if (out.empty()) {
        save_edge_list(g, std::cout);
    } else {
        save_edge_list_file(g, out);
        std::cout << "wrote " << out << ": " << g.node_count() << " nodes, " << g.edge_count()
                  << " edges\n";
    }
    return 0;
}

int cmd_stats(const InstanceArgs& a, const std::string& cdf_out) {
    if (a.graph_file.empty()) throw std::runtime_error("stats needs --graph");
    Graph g = load_edge_list_file(a.graph_file);
    std::vector<NodeId> core = a.core_file.empty()
                                   ? sample_core(g.node_count(), a.core_fraction, a.core_seed)
                                   : read_core_file(a.core_file, g.node_count());
    ParadoxStats st = paradox_stats(g, core);

    std::vector<double> w =
        a.weights == "voter" ? voter_weights(g, a.voter_steps) : degree_weights(g);
    std::vector<double> p(g.node_count(), 0.0);
    BuildOptions bo;
    bo.exclude_core_from_neighbors = a.exclude_core;
    BipartiteInstance inst = build_instance(g, core, w, p, bo);

    std::cout << "nodes " << g.node_count() << '\n';
    std::cout << "edges " << g.edge_count() << '\n';
    std::cout << "core " << inst.core_size() << '\n';
    std::cout << "neighbors " << inst.neighbor_count() << '\n';
    std::cout << "mean_degree_core " << fmt(st.mean_degree_core) << '\n';
    std::cout << "mean_degree_neighbors " << fmt(st.mean_degree_neighbors) << '\n';
    if (!cdf_out.empty()) {
        std::ofstream out(cdf_out);
        if (!out) throw std::runtime_error("cannot open for writing: " + cdf_out);
        out << "population\tdegree\tcumulative\n";
        for (auto [d, f] : st.core_cdf) out << "core\t" << d << '\t' << fmt(f) << '\n';
        for (auto [d, f] : st.neighbor_cdf) out << "neighbors\t" << d << '\t' << fmt(f) << '\n';
        std::cout << "cdf " << cdf_out << '\n';
    }
    return 0;
}

struct SeedArgs {
    std::string algo = "greedy";
    unsigned k = 0;
    double epsilon = 0.0;  // greedy-geo / snp; 0 picks the per-algo default
    std::size_t snp_sample = 64;
    std::size_t saa_samples = 0;
    unsigned workers = 1;
    bool lazy = false;
    std::uint64_t seed = 1;
    std::string eval = "none";  // none | exact | mc
    std::size_t eval_samples = 10000;
    std::uint64_t eval_seed = 1;
    std::string out;
    std::string dump_instance_path;
    std::string dump_lp_path;
};

int cmd_seed(const InstanceArgs& ia, const SeedArgs& sa) {
    if (sa.k < 1) throw std::runtime_error("--k must be at least 1");
    BipartiteInstance inst = build_from_args(ia);
    if (!sa.dump_instance_path.empty()) {
        dump_instance_file(inst, sa.dump_instance_path);
        std::cout << "instance " << sa.dump_instance_path << '\n';
    }

    SeedingSolution sol;
    bool adaptive = false;
    std::string note;

    if (sa.algo == "greedy" || sa.algo == "greedy-geo" || sa.algo == "saa-greedy") {
        GreedyOptions o;
        if (sa.algo == "greedy-geo")
            o.strategy = SplitStrategy::geometric(sa.epsilon > 0 ? sa.epsilon : 1.0);
        if (sa.algo == "saa-greedy") {
            std::size_t cap = std::max<std::size_t>(1, inst.neighbor_count());
            o.saa_samples = std::min(sa.saa_samples == 0 ? cap : sa.saa_samples, cap);
            o.saa_seed = sa.seed;
        }
        o.workers = sa.workers;
        o.lazy = sa.lazy;
        sol = run(inst, sa.k, o);
        adaptive = true;
    } else if (sa.algo == "snp") {
        SamplePruneStats st;
        sol = run_sample_and_prune(inst, sa.k, sa.epsilon > 0 ? sa.epsilon : 0.2, sa.snp_sample,
                                   sa.seed, &st);
        note = "rounds=" + std::to_string(st.rounds) +
               " max_sample=" + std::to_string(st.max_sample);
        adaptive = true;
    } else if (sa.algo == "lp") {
        SeedingLP lp = build_lp(inst, sa.k);
        if (!sa.dump_lp_path.empty()) {
            std::ofstream out(sa.dump_lp_path);
            if (!out) throw std::runtime_error("cannot open for writing: " + sa.dump_lp_path);
            dump_lp(lp, out);
            std::cout << "lp " << sa.dump_lp_path << '\n';
        }
        FractionalSolution frac = solve_lp(lp);
        note = "lp_objective=" + fmt(frac.objective) +
               " iterations=" + std::to_string(frac.iterations);
        sol = pipage_round(inst, lp, frac);
        adaptive = true;
    } else if (sa.algo == "rn" || sa.algo == "im" || sa.algo == "rf") {
        if (inst.core_weight.empty())
            throw std::runtime_error(
                "baselines need core weights; restored instances do not carry them");
        if (sa.algo == "rf") {
            RfSelection sel = baseline_rf(inst, sa.k, sa.seed);
            sol.first_stage = sel.first_stage;
            std::sort(sol.first_stage.begin(), sol.first_stage.end());
            sol.value = sel.expected_value;
        } else {
            auto S = sa.algo == "rn" ? baseline_rn(inst, sa.k, sa.seed) : baseline_im(inst, sa.k);
            sol.first_stage = std::move(S);
            for (std::uint32_t ci : sol.first_stage) sol.value += inst.core_weight[ci];
        }
        sol.second_stage_budget = 0.0;
    } else {
        throw std::runtime_error("unknown --algo: " + sa.algo);
    }

    std::cout << "algo " << sa.algo << '\n';
    std::cout << "k " << sa.k << '\n';
    std::cout << "first_stage " << sol.first_stage.size() << '\n';
    std::cout << "second_stage_budget " << fmt(sol.second_stage_budget) << '\n';
    std::cout << "objective " << fmt(sol.value) << '\n';
    if (!note.empty()) std::cout << "note " << note << '\n';
    if (!sol.note.empty()) std::cout << "note " << sol.note << '\n';

    if (adaptive && sa.eval != "none") {
        unsigned j = sa.k - static_cast<unsigned>(sol.first_stage.size());
        if (sa.eval == "exact") {
            std::cout << "adaptive_value " << fmt(adaptive_value_exact(inst, sol.first_stage, j))
                      << '\n';
        } else if (sa.eval == "mc") {
            McEstimate est = adaptive_value_mc(inst, sol.first_stage, j, sa.eval_samples,
                                               sa.eval_seed, sa.workers);
            std::cout << "adaptive_value " << fmt(est.mean) << '\n';
            std::cout << "stderr " << fmt(est.stderr_) << '\n';
        } else {
            throw std::runtime_error("--eval must be none, exact or mc");
        }
    }

    if (!sa.out.empty()) {
        write_solution_file(to_record(sol, inst, sa.algo, sa.k), sa.out);
        std::cout << "solution " << sa.out << '\n';
    }
    return 0;
}

int cmd_eval(const InstanceArgs& ia, const std::string& solution_file, const std::string& mode,
             std::size_t samples, std::uint64_t seed, unsigned workers) {
    BipartiteInstance inst = build_from_args(ia);
    SolutionRecord rec = read_solution_file(solution_file);
    std::vector<std::uint32_t> S = record_core_indices(rec, inst);
    if (rec.k < S.size()) throw std::runtime_error("solution has more seeds than its budget");
    unsigned j = rec.k - static_cast<unsigned>(S.size());
    std::cout << "algo " << rec.algo << '\n';
    std::cout << "k " << rec.k << '\n';
    std::cout << "stored_value " << fmt(rec.value) << '\n';
    if (mode == "exact") {
        std::cout << "adaptive_value " << fmt(adaptive_value_exact(inst, S, j)) << '\n';
    } else if (mode == "mc") {
        McEstimate est = adaptive_value_mc(inst, S, j, samples, seed, workers);
        std::cout << "adaptive_value " << fmt(est.mean) << '\n';
        std::cout << "stderr " << fmt(est.stderr_) << '\n';
    } else {
        throw std::runtime_error("--mode must be exact or mc");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive seeding toolkit"};
    app.require_subcommand(1);

    // generate
    GeneratorSpec gspec;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("generate", "write a synthetic graph as an edge list");
    gen->add_option("--kind", gspec.kind,
                    "barabasi_albert, watts_strogatz, kronecker or configuration")
        ->required();
    gen->add_option("--n", gspec.n, "node count");
    gen->add_option("--m0", gspec.m0, "seed clique size (barabasi_albert)");
    gen->add_option("--attach", gspec.attach, "edges per arrival (barabasi_albert)");
    gen->add_option("--ring-degree", gspec.ring_degree, "lattice degree (watts_strogatz)");
    gen->add_option("--beta", gspec.beta, "rewiring probability (watts_strogatz)");
    gen->add_option("--power", gspec.power, "kronecker power");
    gen->add_option("--initiator", gspec.initiator, "star4 or an edge list file (kronecker)");
    gen->add_option("--degrees-file", gspec.degrees_file, "degree sequence (configuration)");
    gen->add_option("--seed", gspec.seed, "generator seed");
    gen->add_option("--out", gen_out, "output edge list (stdout when absent)");

    // stats
    InstanceArgs stats_args;
    std::string cdf_out;
    CLI::App* stats = app.add_subcommand("stats", "core vs neighborhood degree statistics");
    add_instance_options(stats, stats_args, false);
    stats->add_option("--cdf-out", cdf_out, "write degree CDFs as TSV");

    // seed
    InstanceArgs seed_inst;
    SeedArgs seed_args;
    CLI::App* seed = app.add_subcommand("seed", "run a seeding algorithm");
    add_instance_options(seed, seed_inst, true);
    seed->add_option("--algo", seed_args.algo,
                     "greedy, greedy-geo, snp, lp, saa-greedy, rn, im or rf");
    seed->add_option("--k", seed_args.k, "total budget")->required();
    seed->add_option("--epsilon", seed_args.epsilon, "split ladder / threshold ladder epsilon");
    seed->add_option("--snp-sample", seed_args.snp_sample, "sample size per pruning round");
    seed->add_option("--saa-samples", seed_args.saa_samples,
                     "marginal estimation samples (saa-greedy; 0 = neighbor count)");
    seed->add_option("--workers", seed_args.workers, "worker threads");
    seed->add_flag("--lazy", seed_args.lazy, "lazy marginal queue (greedy variants)");
    seed->add_option("--seed", seed_args.seed, "algorithm seed (snp, saa, rn, rf)");
    seed->add_option("--eval", seed_args.eval, "none, exact or mc (default none)");
    seed->add_option("--eval-samples", seed_args.eval_samples, "Monte Carlo sample count");
    seed->add_option("--eval-seed", seed_args.eval_seed, "Monte Carlo seed");
    seed->add_option("--out", seed_args.out, "write the solution record here");
    seed->add_option("--dump-instance", seed_args.dump_instance_path,
                     "write the built instance before solving");
    seed->add_option("--dump-lp", seed_args.dump_lp_path,
                     "write the relaxation in sparse text form (lp only)");

    // eval
    InstanceArgs eval_inst;
    std::string eval_solution, eval_mode = "exact";
    std::size_t eval_samples = 10000;
    std::uint64_t eval_seed = 1;
    unsigned eval_workers = 1;
    CLI::App* ev = app.add_subcommand("eval", "evaluate a stored solution");
    add_instance_options(ev, eval_inst, true);
    ev->add_option("--solution", eval_solution, "solution record file")->required();
    ev->add_option("--mode", eval_mode, "exact or mc (default exact)");
    ev->add_option("--samples", eval_samples, "Monte Carlo sample count");
    ev->add_option("--seed", eval_seed, "Monte Carlo seed");
    ev->add_option("--workers", eval_workers, "worker threads");

    // bench / scale
    std::string bench_config, bench_out = "bench-out";
    CLI::App* bench = app.add_subcommand("bench", "run a benchmark config");
    bench->add_option("--config", bench_config, "experiment config file")->required();
    bench->add_option("--out", bench_out, "output directory (default bench-out)");

    std::string scale_config, scale_out = "scale-out";
    CLI::App* scale = app.add_subcommand("scale", "run a core-subsampling scaling ladder");
    scale->add_option("--config", scale_config, "experiment config file")->required();
    scale->add_option("--out", scale_out, "output directory (default scale-out)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_generate(gspec, gen_out);
        if (stats->parsed()) return cmd_stats(stats_args, cdf_out);
        if (seed->parsed()) return cmd_seed(seed_inst, seed_args);
        if (ev->parsed())
            return cmd_eval(eval_inst, eval_solution, eval_mode, eval_samples, eval_seed,
                            eval_workers);
        if (bench->parsed()) {
            auto rows = run_experiment(parse_config_file(bench_config), bench_out);
            std::cout << "rows " << rows.size() << '\n';
            std::cout << "out " << bench_out << '\n';
            return 0;
        }
        if (scale->parsed()) {
            auto rows = run_scaling(parse_config_file(scale_config), scale_out);
            std::cout << "rows " << rows.size() << '\n';
            std::cout << "out " << scale_out << '\n';
            return 0;
        }
    } catch (const LpIterationLimit& e) {
        std::cerr << "error: " << e.what() << " (objective so far " << fmt(e.incumbent.objective)
                  << ")\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
