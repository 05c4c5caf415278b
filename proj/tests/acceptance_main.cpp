// Acceptance gate. Each criterion prints one [PASS]/[FAIL] line; the binary
// exits nonzero if any fail. Tolerances are pinned here as named constants,
// not spread through the checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "adaseed/bench.hpp"
#include "adaseed/evaluation.hpp"
#include "adaseed/generators.hpp"
#include "adaseed/greedy.hpp"
#include "adaseed/influence.hpp"
#include "adaseed/instance.hpp"
#include "adaseed/knapsack.hpp"
#include "adaseed/lp.hpp"
#include "adaseed/rng.hpp"
#include "oracles.hpp"
#include "rational_lp.hpp"

using namespace adaseed;

namespace {

constexpr double kTolOracle = 1e-9;        // knapsack and property suites
constexpr double kTolLpMatch = 1e-6;       // float simplex vs exact rationals
constexpr double kGreedyFactor = 1.0 - 0.36787944117144233;  // 1 - 1/e
constexpr double kSnpEpsilon = 0.1;
constexpr double kPlateauBand = 0.05;      // voter horizon convergence
constexpr double kSurrogateRatio = 5.0;    // adaptive / IM on the BA surrogate
constexpr double kMcBand = 3.0;            // standard errors

int failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << idx << ": " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

SortedItemList neighborhood_list(const std::vector<SortedItemList>& cores,
                                 std::uint32_t mask) {
    SortedItemList cur;
    for (std::uint32_t ci = 0; ci < cores.size(); ++ci)
        if (mask & (1u << ci)) cur = merge_union(cur, cores[ci]);
    return cur;
}

// 1. solve/merged_solve vs brute force.
void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(1001);
    int bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + rng.below(6);
        std::vector<Item> items;
        for (std::uint32_t i = 0; i < n; ++i)
            items.push_back({i, 0.25 * double(rng.below(20)), 0.125 * double(rng.below(9))});
        double budget = 0.125 * double(rng.below(40));
        double want = oracles::brute_knapsack(items, budget);

        auto lst = SortedItemList::from_unsorted(items);
        if (std::abs(solve(lst, budget) - want) > kTolOracle) ++bad;

        // Same optimum through the two-list path, random split.
        std::vector<Item> av, bv;
        for (const Item& it : items) (rng.bernoulli(0.5) ? av : bv).push_back(it);
        double merged = merged_solve(SortedItemList::from_unsorted(av),
                                     SortedItemList::from_unsorted(bv), budget);
        if (std::abs(merged - want) > kTolOracle) ++bad;
    }
    double dt = seconds_since(t0);
    report(1, "knapsack oracle matches brute force on 200 instances", bad == 0 && dt < 1.0,
           "violations=" + std::to_string(bad) + " time=" + fmt(dt) + "s");
}

// 2. Oracle property suites: budget monotonicity of marginals, submodularity
// in the item set, and composition through neighborhoods.
void criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(2002);
    int bad_l1 = 0, bad_l2 = 0, bad_p3 = 0;

    for (int trial = 0; trial < 100; ++trial) {
        std::size_t m = 2 + rng.below(7);  // up to 8 cores
        std::size_t n = 2 + rng.below(11); // up to 12 neighbors
        auto inst = oracles::random_instance(rng, m, n);
        auto cores = core_item_lists(inst);

        double b = 0.25 * double(rng.below(17));
        double c = b + 0.25 * double(rng.below(9));

        // marginal of one extra core is nondecreasing in the budget
        std::uint32_t tmask = std::uint32_t(rng.below(1u << m));
        std::uint32_t x = std::uint32_t(rng.below(m));
        tmask &= ~(1u << x);
        SortedItemList T = neighborhood_list(cores, tmask);
        SortedItemList Tx = merge_union(T, cores[x]);
        double gain_c = solve(Tx, c) - solve(T, c);
        double gain_b = solve(Tx, b) - solve(T, b);
        if (gain_c < gain_b - kTolOracle) ++bad_l1;

        // submodular in the set at fixed budget
        if (m >= 2) {
            std::uint32_t y = std::uint32_t(rng.below(m));
            if (y != x) {
                std::uint32_t base = tmask & ~(1u << y);
                SortedItemList S = neighborhood_list(cores, base);
                SortedItemList Sx = merge_union(S, cores[x]);
                SortedItemList Sy = merge_union(S, cores[y]);
                SortedItemList Sxy = merge_union(Sx, cores[y]);
                double lhs = solve(Sx, b) - solve(S, b);
                double rhs = solve(Sxy, b) - solve(Sy, b);
                if (lhs < rhs - kTolOracle) ++bad_l2;
            }
        }

        // composition: monotone and submodular as a function of the
        // first-stage set, S inside T
        std::uint32_t smask = tmask & std::uint32_t(rng.below(1u << m));
        SortedItemList NS = neighborhood_list(cores, smask);
        SortedItemList NSx = merge_union(NS, cores[x]);
        double gs = solve(NSx, b) - solve(NS, b);
        double gt = solve(Tx, b) - solve(T, b);
        if (gs < gt - kTolOracle) ++bad_p3;
        if (solve(NS, b) > solve(T, b) + kTolOracle) ++bad_p3;
    }
    double dt = seconds_since(t0);
    bool ok = bad_l1 == 0 && bad_l2 == 0 && bad_p3 == 0 && dt < 10.0;
    report(2, "oracle marginal/submodularity/composition properties hold", ok,
           "budget=" + std::to_string(bad_l1) + " set=" + std::to_string(bad_l2) +
               " composition=" + std::to_string(bad_p3) + " time=" + fmt(dt) + "s");
}

// 3. Greedy approximation factor against the enumerated optimum.
void criterion_3() {
    Rng rng(3003);
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto inst = oracles::random_instance(rng, 3 + rng.below(5), 3 + rng.below(8));
        unsigned k = 2 + unsigned(rng.below(4));
        double opt = oracles::exhaustive_opt_na(core_item_lists(inst), k);
        SeedingSolution sol = run(inst, k);
        if (sol.value < kGreedyFactor * opt - kTolOracle) ++bad;
        if (sol.value > opt + kTolOracle) ++bad;
    }
    report(3, "greedy keeps (1-1/e) of the enumerated optimum on 50 instances", bad == 0,
           "violations=" + std::to_string(bad));
}

// 4. The relaxation dominates the exact adaptive optimum.
void criterion_4() {
    Rng rng(4004);
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto inst = oracles::random_instance(rng, 2 + rng.below(5), 2 + rng.below(7));
        unsigned k = 2 + unsigned(rng.below(3));
        try {
            AdaptivityGapReport rep = audit_adaptivity_gap(inst, k);
            if (rep.opt_adaptive > rep.opt_non_adaptive + kTolOracle) ++bad;
        } catch (const std::logic_error&) {
            ++bad;  // the audit itself asserts domination
        }
    }
    report(4, "adaptive optimum never exceeds the relaxation on 50 audits", bad == 0,
           "violations=" + std::to_string(bad));
}

// 5. LP against the exact rational oracle, and the rounding guarantee.
void criterion_5() {
    Rng rng(5005);
    int bad_round = 0, bad_match = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto inst = oracles::random_instance(rng, 2 + rng.below(5), 2 + rng.below(7));
        unsigned k = 2 + unsigned(rng.below(3));
        SeedingLP lp = build_lp(inst, k);
        FractionalSolution frac = solve_lp(lp);
        SeedingSolution sol = pipage_round(inst, lp, frac);
        if (sol.value < kGreedyFactor * frac.objective - kTolLpMatch) ++bad_round;

        double exact = oracles::solve_rational(oracles::rational_from(lp)).convert_to<double>();
        double scale = std::max(1.0, std::abs(exact));
        if (std::abs(frac.objective - exact) > kTolLpMatch * scale) ++bad_match;
    }
    report(5, "pipage keeps (1-1/e) of the LP optimum; LP matches the exact oracle",
           bad_round == 0 && bad_match == 0,
           "rounding=" + std::to_string(bad_round) + " match=" + std::to_string(bad_match));
}

// 6. Sample-and-prune approximation factor.
void criterion_6() {
    Rng rng(6006);
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        auto inst = oracles::random_instance(rng, 3 + rng.below(5), 3 + rng.below(8));
        unsigned k = 2 + unsigned(rng.below(4));
        double opt = oracles::exhaustive_opt_na(core_item_lists(inst), k);
        SeedingSolution sol =
            run_sample_and_prune(inst, k, kSnpEpsilon, 4, 600 + std::uint64_t(trial));
        if (sol.value < (kGreedyFactor - kSnpEpsilon) * opt - kTolOracle) ++bad;
    }
    report(6, "sample-and-prune keeps (1-1/e-eps) of the optimum on 50 instances", bad == 0,
           "violations=" + std::to_string(bad));
}

// 7. Voter weights: mass conservation and horizon convergence.
void criterion_7() {
    int bad_mass = 0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        Graph g = s % 2 == 0 ? barabasi_albert(200 + 40 * s, 4, 2, s)
                             : watts_strogatz(200 + 40 * s, 6, 0.2, s);
        double n = double(g.node_count());
        for (unsigned steps : {1u, 10u, 100u}) {
            auto w = voter_weights(g, steps);
            double mass = 0.0;
            for (double x : w) mass += x;
            if (std::abs(mass - n) > 1e-6 * n) ++bad_mass;
        }
    }

    // Horizon curve on a 10^4-node graph: the seeding value settles early.
    Graph g = barabasi_albert(10000, 5, 5, 424242);
    std::vector<NodeId> core;
    {
        Rng rng(31);
        std::vector<NodeId> pool(g.node_count());
        for (NodeId i = 0; i < g.node_count(); ++i) pool[i] = i;
        for (std::size_t s = 0; s < 200; ++s) {
            std::size_t r = s + rng.below(pool.size() - s);
            std::swap(pool[s], pool[r]);
        }
        core.assign(pool.begin(), pool.begin() + 200);
        std::sort(core.begin(), core.end());
    }
    auto value_at_horizon = [&](unsigned steps) {
        auto w = voter_weights(g, steps);
        std::vector<double> p(g.node_count(), 0.0);
        auto inst = build_instance(g, core, w, p, {});
        ProbabilityModel pm;
        pm.mean = 0.5;
        assign_probabilities(inst, pm);
        GreedyOptions opts;
        opts.strategy = SplitStrategy::geometric(0.5);
        return run(inst, 20, opts).value;
    };
    double v15 = value_at_horizon(15);
    double v50 = value_at_horizon(50);
    bool plateau = std::abs(v15 - v50) <= kPlateauBand * v50;

    report(7, "voter mass conserved on 20 graphs and the horizon curve plateaus",
           bad_mass == 0 && plateau,
           "mass_violations=" + std::to_string(bad_mass) + " v15=" + fmt(v15) +
               " v50=" + fmt(v50));
}

// 8. Scale-free surrogate: the two-stage policy beats the one-stage
// heuristic by a wide factor on a preferential-attachment graph, and the
// advantage collapses on a small-world graph of matched size.
void criterion_8() {
    auto t0 = std::chrono::steady_clock::now();

    auto ratio_on = [&](const Graph& g) {
        std::vector<NodeId> core;
        Rng rng(88);
        std::vector<NodeId> pool(g.node_count());
        for (NodeId i = 0; i < g.node_count(); ++i) pool[i] = i;
        for (std::size_t s = 0; s < 1000; ++s) {
            std::size_t r = s + rng.below(pool.size() - s);
            std::swap(pool[s], pool[r]);
        }
        core.assign(pool.begin(), pool.begin() + 1000);
        std::sort(core.begin(), core.end());

        auto w = degree_weights(g);
        std::vector<double> p(g.node_count(), 0.0);
        auto inst = build_instance(g, core, w, p, {});
        ProbabilityModel pm;
        pm.mean = 1.0;  // every neighbor realizes
        assign_probabilities(inst, pm);

        const unsigned k = 100;  // 0.1 |X|
        SeedingSolution sol = run(inst, k);
        double adaptive = sol.value;  // exact under p == 1: integral knapsack

        double im = 0.0;
        for (std::uint32_t ci : baseline_im(inst, k)) im += inst.core_weight[ci];
        return adaptive / im;
    };

    Graph ba = barabasi_albert(100000, 10, 10, 8);
    double r_ba = ratio_on(ba);
    Graph ws = watts_strogatz(100000, 20, 0.3, 8);
    double r_ws = ratio_on(ws);

    double dt = seconds_since(t0);
    bool ok = r_ba >= kSurrogateRatio && r_ws <= 0.5 * r_ba && dt < 300.0;
    report(8, "two-stage vs one-stage factor on the scale-free surrogate", ok,
           "ba_ratio=" + fmt(r_ba) + " ws_ratio=" + fmt(r_ws) + " time=" + fmt(dt) + "s");
}

// 9. Mean-value ordering of the policies across seeds and budgets.
//
// The first-stage pool is drawn from typical-degree nodes: the audience one
// can recruit directly is rarely the network's elite, while its friends
// include the hubs (the friendship paradox). A uniform pool would hand the
// one-stage heuristic the global degree tail at small budgets and mask the
// comparison this benchmark is about.
void criterion_9() {
    Graph g = barabasi_albert(100000, 10, 10, 99);
    auto w = degree_weights(g);
    double mean_deg = 2.0 * double(g.edge_count()) / double(g.node_count());

    std::vector<NodeId> typical;
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (double(g.degree(u)) <= mean_deg) typical.push_back(u);

    const std::size_t core_size = 1000;
    const std::vector<unsigned> budgets = {100, 200, 300, 400, 500};  // 0.1m .. 0.5m
    std::vector<double> sum_adaptive(budgets.size(), 0.0), sum_rf(budgets.size(), 0.0),
        sum_im(budgets.size(), 0.0), sum_rn(budgets.size(), 0.0);

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::vector<NodeId> pool = typical;
        Rng rng(mix_seed(9009, seed));
        for (std::size_t s = 0; s < core_size; ++s) {
            std::size_t r = s + rng.below(pool.size() - s);
            std::swap(pool[s], pool[r]);
        }
        std::vector<NodeId> core(pool.begin(), pool.begin() + core_size);
        std::sort(core.begin(), core.end());

        std::vector<double> p(g.node_count(), 0.0);
        auto inst = build_instance(g, core, w, p, {});
        ProbabilityModel pm;
        pm.mean = 1.0;  // deterministic realization: greedy's value is exact
        assign_probabilities(inst, pm);

        for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
            unsigned k = budgets[bi];
            GreedyOptions opts;
            opts.strategy = SplitStrategy::geometric(1.0);
            opts.lazy = true;
            SeedingSolution sol = run(inst, k, opts);
            sum_adaptive[bi] += sol.value;
            sum_rf[bi] += baseline_rf(inst, k, mix_seed(seed, bi)).expected_value;
            double im = 0.0;
            for (std::uint32_t ci : baseline_im(inst, k)) im += inst.core_weight[ci];
            sum_im[bi] += im;
            double rn = 0.0;
            for (std::uint32_t ci : baseline_rn(inst, k, mix_seed(seed, 7 * bi + 1)))
                rn += inst.core_weight[ci];
            sum_rn[bi] += rn;
        }
    }

    bool ok = true;
    std::string detail;
    for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
        if (!(sum_adaptive[bi] >= sum_rf[bi] && sum_rf[bi] >= sum_im[bi] &&
              sum_im[bi] >= sum_rn[bi]))
            ok = false;
        if (bi == 0)
            detail = "k=100 means: adaptive=" + fmt(sum_adaptive[bi] / 10) +
                     " rf=" + fmt(sum_rf[bi] / 10) + " im=" + fmt(sum_im[bi] / 10) +
                     " rn=" + fmt(sum_rn[bi] / 10);
    }
    report(9, "mean value orders adaptive >= RF >= IM >= RN at every budget", ok, detail);
}

// 10. Exact objective vs sampled objective: the speedup is large and grows
// with the neighbor count.
void criterion_10() {
    Graph g = barabasi_albert(30000, 6, 6, 1212);
    auto w = degree_weights(g);

    auto timed_pair = [&](std::size_t target_neighbors) {
        // Grow the core until the neighborhood reaches the target size.
        Rng rng(55);
        std::vector<NodeId> pool(g.node_count());
        for (NodeId i = 0; i < g.node_count(); ++i) pool[i] = i;
        for (std::size_t s = 0; s < pool.size(); ++s) {
            std::size_t r = s + rng.below(pool.size() - s);
            std::swap(pool[s], pool[r]);
        }
        std::size_t lo = 1, hi = pool.size();
        std::vector<double> p(g.node_count(), 0.0);
        BipartiteInstance inst;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            std::vector<NodeId> core(pool.begin(), pool.begin() + mid);
            std::sort(core.begin(), core.end());
            auto cand = build_instance(g, core, w, p, {});
            if (cand.neighbor_count() >= target_neighbors)
                hi = mid;
            else
                lo = mid + 1;
        }
        std::vector<NodeId> core(pool.begin(), pool.begin() + lo);
        std::sort(core.begin(), core.end());
        inst = build_instance(g, core, w, p, {});
        ProbabilityModel pm;
        pm.mean = 0.5;
        assign_probabilities(inst, pm);

        const unsigned k = 4;
        GreedyOptions exact;
        auto t0 = std::chrono::steady_clock::now();
        SeedingSolution se = run(inst, k, exact);
        double t_exact = seconds_since(t0);

        GreedyOptions sampled;
        sampled.saa_samples = inst.neighbor_count();
        t0 = std::chrono::steady_clock::now();
        SeedingSolution ss = run(inst, k, sampled);
        double t_saa = seconds_since(t0);
        (void)se;
        (void)ss;
        return std::pair<double, double>(t_exact, t_saa);
    };

    auto [e1, s1] = timed_pair(1000);
    auto [e4, s4] = timed_pair(4000);
    double speedup1 = s1 / std::max(e1, 1e-9);
    double speedup4 = s4 / std::max(e4, 1e-9);
    bool ok = speedup4 >= 50.0 && speedup4 > speedup1;
    report(10, "exact objective outruns the sampled objective, gap grows with n", ok,
           "speedup_n1000=" + fmt(speedup1) + " speedup_n4000=" + fmt(speedup4));
}

// 11. Exact evaluator vs enumeration; MC concentration.
void criterion_11() {
    Rng rng(1111);
    int bad_dp = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto inst = oracles::random_instance(rng, 1 + rng.below(4), 1 + rng.below(12));
        std::vector<std::uint32_t> S;
        for (std::uint32_t ci = 0; ci < inst.core_size(); ++ci)
            if (rng.bernoulli(0.6)) S.push_back(ci);
        unsigned j = unsigned(rng.below(7));
        double dp = adaptive_value_exact(inst, S, j);
        double brute = oracles::enumerate_adaptive_value(inst, S, j);
        if (std::abs(dp - brute) > kTolOracle * std::max(1.0, std::abs(brute))) ++bad_dp;
    }

    int within = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto inst = oracles::random_instance(rng, 3, 10);
        std::vector<std::uint32_t> S = {0, 1, 2};
        unsigned j = 1 + unsigned(rng.below(4));
        double exact = adaptive_value_exact(inst, S, j);
        McEstimate est = adaptive_value_mc(inst, S, j, 20000, 7000 + trial);
        double dev = std::abs(est.mean - exact);
        if (dev <= kMcBand * est.stderr_ || dev <= kTolOracle) ++within;
    }
    bool ok = bad_dp == 0 && within >= 99;
    report(11, "exact evaluator matches enumeration; MC stays within 3 SE", ok,
           "dp_violations=" + std::to_string(bad_dp) + " mc_within=" + std::to_string(within) +
               "/100");
}

// 12. Byte-identical pipeline outputs across reruns and worker counts.
void criterion_12() {
    const char* config_text =
        "experiment = determinism\n"
        "gen.kind = barabasi_albert\n"
        "gen.n = 600\n"
        "gen.m0 = 6\n"
        "gen.attach = 3\n"
        "gen.seed = 21\n"
        "core.fraction = 0.2\n"
        "core.seed = 4\n"
        "prob.family = beta\n"
        "prob.mean = 0.4\n"
        "prob.seed = 11\n"
        "budget = 4\n"
        "budget = 8\n"
        "algo = greedy\n"
        "algo = snp\n"
        "algo = lp\n"
        "algo = rf\n"
        "eval = mc\n"
        "eval.samples = 8192\n"
        "repetitions = 2\n"
        "seed = 3\n";
    std::istringstream in(config_text);
    ExperimentConfig cfg = parse_config(in);

    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "adaseed-acceptance-determinism";
    fs::remove_all(base);
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };

    run_experiment(cfg, base / "w1a");
    run_experiment(cfg, base / "w1b");
    cfg.workers = 8;
    run_experiment(cfg, base / "w8");

    std::string a = slurp(base / "w1a" / "results.csv");
    std::string b = slurp(base / "w1b" / "results.csv");
    std::string c = slurp(base / "w8" / "results.csv");
    bool ok = !a.empty() && a == b && a == c;
    fs::remove_all(base);
    report(12, "pipeline CSV is byte-identical across reruns and 1 vs 8 workers", ok,
           "bytes=" + std::to_string(a.size()));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();

    if (failures > 0) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
