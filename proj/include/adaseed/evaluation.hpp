#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "adaseed/instance.hpp"

namespace adaseed {

// Baselines. All return core indices unless noted.

// k distinct cores uniformly at random. k <= |X|.
std::vector<std::uint32_t> baseline_rn(const BipartiteInstance& inst, unsigned k,
                                       std::uint64_t seed);

// Top k cores by own weight (ties ascending index). Uses inst.core_weight
// by default; the span overload takes explicit weights over the core.
std::vector<std::uint32_t> baseline_im(const BipartiteInstance& inst, unsigned k);
std::vector<std::uint32_t> baseline_im(const BipartiteInstance& inst, unsigned k,
                                       std::span<const double> core_weights);

struct RfSelection {
    std::vector<std::uint32_t> first_stage;      // ceil(k/2) random cores
    std::vector<std::uint32_t> chosen_neighbors; // distinct neighbor indices
    double expected_value = 0.0;                 // sum of p_u w_u over chosen
};

// Random-friend heuristic: ceil(k/2) random cores, one uniform neighbor
// each (cores without neighbors contribute none), duplicates collapsed.
// Requires k >= 2.
RfSelection baseline_rf(const BipartiteInstance& inst, unsigned k, std::uint64_t seed);

// Exact expected adaptive value of first stage S with second-stage budget j:
// neighbors realize independently, the best j realized by weight are kept.
// Poisson-binomial prefix DP over the weight-sorted neighborhood, O(|N(S)| j).
// |N(S)| is capped (default 5000); larger neighborhoods must use the
// Monte Carlo estimator.
double adaptive_value_exact(const BipartiteInstance& inst,
                            std::span<const std::uint32_t> S, unsigned j,
                            std::size_t neighborhood_cap = 5000);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t samples = 0;
};

// Monte Carlo estimate of the same quantity. Samples are partitioned into
// fixed blocks seeded independently of the worker count and reduced in
// block order, so the result is identical at any `workers`.
McEstimate adaptive_value_mc(const BipartiteInstance& inst,
                             std::span<const std::uint32_t> S, unsigned j,
                             std::size_t samples, std::uint64_t seed,
                             unsigned workers = 1);

// Sampled estimate of F(p q) = E[sum of w over neighbors that realize and
// are kept by q]: each neighbor independently counts with probability
// p_u q_u. q is indexed by neighbor index.
double estimate_relaxation_value(const BipartiteInstance& inst,
                                 std::span<const double> q, std::size_t samples,
                                 std::uint64_t seed);

struct AdaptivityGapReport {
    double opt_adaptive = 0.0;
    double opt_non_adaptive = 0.0;
    std::vector<std::uint32_t> best_adaptive_set;
    std::vector<std::uint32_t> best_non_adaptive_set;
};

// Exhaustive audit over every first-stage subset (|X| <= 10, |N(X)| <= 12):
// opt_adaptive from the exact evaluator, opt_non_adaptive from the knapsack
// relaxation. Throws if the relaxation fails to dominate beyond 1e-9.
AdaptivityGapReport audit_adaptivity_gap(const BipartiteInstance& inst, unsigned k);

}  // namespace adaseed
