#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "adaseed/greedy.hpp"
#include "adaseed/instance.hpp"

namespace adaseed {

// Fractional relaxation of the two-stage problem:
//   max  sum_u p_u w_u q_u
//   s.t. sum_v lambda_v + sum_u p_u q_u <= k          (budget row)
//        q_u - sum_{v in parents(u)} lambda_v <= 0    (coverage row per u)
//        0 <= lambda_v <= 1, 0 <= q_u <= 1
// Variables are ordered lambda_0..lambda_{m-1}, q_0..q_{n-1}.
struct SeedingLP {
    std::size_t num_core = 0;
    std::size_t num_neighbors = 0;
    double budget = 0.0;
    std::vector<double> prob;                          // per neighbor
    std::vector<double> gain;                          // p_u * w_u per neighbor
    std::vector<std::vector<std::uint32_t>> parents;   // per neighbor, core indices
};

SeedingLP build_lp(const BipartiteInstance& inst, double k);

struct FractionalSolution {
    std::vector<double> lambda;
    std::vector<double> q;
    double objective = 0.0;
    std::size_t iterations = 0;
};

struct LpIterationLimit : std::runtime_error {
    explicit LpIterationLimit(FractionalSolution best)
        : std::runtime_error("simplex iteration cap exceeded"), incumbent(std::move(best)) {}
    FractionalSolution incumbent;
};

struct LpOptions {
    double tol = 1e-9;
    std::size_t max_iterations = 0;  // 0 = automatic from problem size
};

// Bounded-variable revised simplex, dense basis inverse, Dantzig pricing
// with a Bland fallback on stall. The all-slack basis is feasible (rhs is
// nonnegative), so no phase one. Throws LpIterationLimit carrying the best
// incumbent when the cap is hit.
FractionalSolution solve_lp(const SeedingLP& lp, const LpOptions& opts = {});

// Largest constraint or bound violation of a candidate point.
double max_violation(const SeedingLP& lp, const std::vector<double>& lambda,
                     const std::vector<double>& q);

// Sparse plain-text dump:
//   #adaptive-seed-lp v1
//   rows <R> cols <C> maximize
//   c <col> <value>         objective coefficients
//   a <row> <col> <value>   constraint matrix triples
//   b <row> <value>         right hand sides
//   u <col> <value>         upper bounds (lower bounds are all 0)
// Row 0 is the budget row, row 1+u the coverage row of neighbor u.
void dump_lp(const SeedingLP& lp, std::ostream& out);

// Rounds the first stage to an integral set by pairwise transfer on the
// coverage potential sum_u p_u q_u w_u (1 - prod_{v in pa(u)} (1 - lambda_v))
// restricted to neighbors with q_u > 0, then re-solves the second stage
// exactly over the full N(S) at budget k - |S|. Both the floor and ceil
// completions of the last fractional variable are evaluated; the better one
// is returned (ties to floor).
SeedingSolution pipage_round(const BipartiteInstance& inst, const SeedingLP& lp,
                             const FractionalSolution& frac);

}  // namespace adaseed
