#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adaseed/instance.hpp"
#include "adaseed/knapsack.hpp"

namespace adaseed {

struct SeedingSolution {
    std::vector<std::uint32_t> first_stage;  // core indices, ascending
    double second_stage_budget = 0.0;        // k - |first_stage|
    // (neighbor index, q) for q > 0; the optimal fractional second stage.
    std::vector<std::pair<std::uint32_t, double>> allocation;
    double value = 0.0;  // sum p_u q_u w_u of the allocation
    // Diagnostics: (t, value) per evaluated split, ascending in t.
    std::vector<std::pair<unsigned, double>> split_values;
    std::string note;
};

struct SplitStrategy {
    enum class Mode { all, geometric };
    Mode mode = Mode::all;
    double epsilon = 1.0;

    static SplitStrategy all() { return {Mode::all, 0.0}; }
    static SplitStrategy geometric(double eps) { return {Mode::geometric, eps}; }

    // Second-stage budgets to try for total budget k: every t in 1..k-1, or
    // the geometric ladder floor((1+eps)^i) capped at k-1 (k-1 always
    // included so the full range is covered).
    std::vector<unsigned> splits(unsigned k) const;
};

// Per-core item lists shared by the greedy variants. Built once per
// instance, immutable afterwards.
std::vector<SortedItemList> core_item_lists(const BipartiteInstance& inst);

struct GreedyResult {
    std::vector<std::uint32_t> chosen;  // core indices in pick order
    double value_at_split = 0.0;        // solve(N(chosen), t)
};

// Greedy for one split: up to `first_budget` additions, each maximizing the
// knapsack marginal at second-stage budget t. Ties go to the smaller core
// index; stops early once every remaining marginal is zero.
GreedyResult greedy_for_split(const BipartiteInstance& inst,
                              const std::vector<SortedItemList>& cores, unsigned t,
                              unsigned first_budget);

struct GreedyOptions {
    SplitStrategy strategy = SplitStrategy::all();
    unsigned workers = 1;
    // Lazy marginal evaluation with a priority queue. Identical output to
    // the plain scan, kept behind a flag for benchmarking only.
    bool lazy = false;
    // When > 0 the marginal of each candidate is estimated by sampling the
    // candidate allocation this many times instead of exact evaluation.
    std::size_t saa_samples = 0;
    std::uint64_t saa_seed = 1;
};

// Full run over all splits. Each split's chosen set is re-solved at budget
// k - |S_t| and the best split wins, ties to the smaller t. Deterministic
// for any worker count: splits are computed in parallel but reduced in
// fixed order. k < 2 yields an empty solution with a note.
SeedingSolution run(const BipartiteInstance& inst, unsigned k,
                    const GreedyOptions& opts = {});

struct SamplePruneStats {
    std::size_t rounds = 0;      // simulated map-reduce rounds
    std::size_t max_sample = 0;  // largest batch handed to one round
};

// Threshold sampling variant: per split, thresholds descend geometrically
// from the largest neighbor weight; each round samples at most sample_size
// unprocessed cores without replacement, accepts those whose marginal meets
// the threshold, and prunes the rest of the universe against it.
SeedingSolution run_sample_and_prune(const BipartiteInstance& inst, unsigned k,
                                     double epsilon, std::size_t sample_size,
                                     std::uint64_t seed,
                                     SamplePruneStats* stats = nullptr);

}  // namespace adaseed
