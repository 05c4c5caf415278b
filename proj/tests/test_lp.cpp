#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "adaseed/greedy.hpp"
#include "adaseed/lp.hpp"
#include "adaseed/rng.hpp"
#include "oracles.hpp"
#include "rational_lp.hpp"

using namespace adaseed;

namespace {

BipartiteInstance grid_instance(Rng& rng, std::size_t m, std::size_t n) {
    // Dyadic weights and probabilities so the rational oracle sees exactly
    // the same numbers as the double solver.
    auto inst = oracles::random_instance(rng, m, n);
    for (auto& p : inst.prob)
        if (p == 0.0) p = 0.125;  // keep the LP nondegenerate enough to be interesting
    return inst;
}

}  // namespace

TEST_CASE("LP assembly matches the instance") {
    Rng rng(3);
    auto inst = oracles::random_instance(rng, 4, 7);
    SeedingLP lp = build_lp(inst, 3.0);
    CHECK(lp.num_core == 4);
    CHECK(lp.num_neighbors == 7);
    CHECK(lp.budget == 3.0);
    for (std::size_t u = 0; u < 7; ++u) {
        CHECK(lp.gain[u] == inst.prob[u] * inst.weight[u]);
        CHECK(lp.parents[u] == inst.parents[u]);
    }
}

TEST_CASE("simplex solution is feasible and matches the exact oracle") {
    Rng rng(7);
    for (int trial = 0; trial < 120; ++trial) {
        auto inst = grid_instance(rng, 2 + rng.below(5), 2 + rng.below(7));
        double k = double(1 + rng.below(4));
        SeedingLP lp = build_lp(inst, k);
        FractionalSolution sol = solve_lp(lp);

        CHECK(max_violation(lp, sol.lambda, sol.q) <= 1e-7);

        auto exact = oracles::solve_rational(oracles::rational_from(lp));
        double want = exact.convert_to<double>();
        CHECK(sol.objective == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("fractional optimum dominates every integral first stage") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = grid_instance(rng, 4, 6);
        unsigned k = 2 + unsigned(rng.below(3));
        SeedingLP lp = build_lp(inst, k);
        FractionalSolution frac = solve_lp(lp);
        double opt_na = oracles::exhaustive_opt_na(core_item_lists(inst), k);
        CHECK(frac.objective >= opt_na - 1e-7);
    }
}

TEST_CASE("pipage rounding keeps (1-1/e) of the fractional optimum") {
    Rng rng(17);
    const double factor = 1.0 - 1.0 / std::exp(1.0);
    for (int trial = 0; trial < 120; ++trial) {
        auto inst = grid_instance(rng, 2 + rng.below(5), 2 + rng.below(7));
        // k >= 2: with a single unit of budget no integral two-stage plan can
        // spend on both stages, so the rounding bound has nothing to promise.
        unsigned k = 2 + unsigned(rng.below(3));
        SeedingLP lp = build_lp(inst, k);
        FractionalSolution frac = solve_lp(lp);
        SeedingSolution sol = pipage_round(inst, lp, frac);

        CHECK(sol.first_stage.size() <= k);
        for (std::size_t i = 0; i + 1 < sol.first_stage.size(); ++i)
            CHECK(sol.first_stage[i] < sol.first_stage[i + 1]);
        CHECK(sol.second_stage_budget ==
              doctest::Approx(double(k) - double(sol.first_stage.size())));
        CHECK(sol.value >= factor * frac.objective - 1e-7);
        // Rounded-and-re-solved value never beats the relaxation.
        CHECK(sol.value <= frac.objective + 1e-7);
    }
}

TEST_CASE("iteration cap throws and carries the incumbent") {
    Rng rng(19);
    auto inst = grid_instance(rng, 6, 8);
    SeedingLP lp = build_lp(inst, 4.0);
    LpOptions opts;
    opts.max_iterations = 1;
    try {
        solve_lp(lp, opts);
        FAIL("expected LpIterationLimit");
    } catch (const LpIterationLimit& e) {
        CHECK(e.incumbent.lambda.size() == lp.num_core);
        CHECK(e.incumbent.q.size() == lp.num_neighbors);
        FractionalSolution full = solve_lp(lp);
        CHECK(e.incumbent.objective <= full.objective + 1e-9);
    }
}

TEST_CASE("max_violation flags infeasible points") {
    Rng rng(23);
    auto inst = grid_instance(rng, 3, 4);
    SeedingLP lp = build_lp(inst, 2.0);
    std::vector<double> lambda(3, 0.0), q(4, 0.0);
    CHECK(max_violation(lp, lambda, q) == 0.0);
    q[0] = 1.0;  // coverage row violated: q_0 > sum of its parents
    CHECK(max_violation(lp, lambda, q) >= 1.0 - 1e-12);
    lambda[0] = 2.0;  // box violated
    CHECK(max_violation(lp, lambda, q) >= 1.0);
}

TEST_CASE("dump format lists every nonzero once") {
    Rng rng(29);
    auto inst = grid_instance(rng, 3, 5);
    SeedingLP lp = build_lp(inst, 2.0);
    std::ostringstream out;
    dump_lp(lp, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "#adaptive-seed-lp v1");
    std::getline(in, line);
    std::istringstream hdr(line);
    std::string word;
    std::size_t rows = 0, cols = 0;
    hdr >> word >> rows >> word >> cols >> word;
    CHECK(rows == 1 + lp.num_neighbors);
    CHECK(cols == lp.num_core + lp.num_neighbors);

    std::size_t nnz = 0, nc = 0, nb = 0, nu = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        switch (line[0]) {
            case 'a': ++nnz; break;
            case 'c': ++nc; break;
            case 'b': ++nb; break;
            case 'u': ++nu; break;
            default: FAIL("unexpected dump line: ", line);
        }
    }
    std::size_t parent_edges = 0;
    for (const auto& pa : lp.parents) parent_edges += pa.size();
    // budget row: one entry per variable with nonzero coefficient.
    std::size_t budget_nnz = lp.num_core;
    for (double p : lp.prob)
        if (p != 0.0) ++budget_nnz;
    CHECK(nnz == budget_nnz + lp.num_neighbors + parent_edges);
    CHECK(nb == rows);
    CHECK(nu == cols);
    std::size_t gains = 0;
    for (double gv : lp.gain)
        if (gv != 0.0) ++gains;
    CHECK(nc == gains);
}

TEST_CASE("rounding an already integral solution is the identity") {
    // One core covering everything forces lambda = 1 at any k >= 1.
    BipartiteInstance inst;
    inst.core = {0};
    inst.neighbors = {1, 2};
    inst.weight = {4.0, 2.0};
    inst.prob = {0.5, 0.5};
    inst.core_adj = {{0, 1}};
    inst.parents = {{0}, {0}};
    SeedingLP lp = build_lp(inst, 2.0);
    FractionalSolution frac = solve_lp(lp);
    CHECK(frac.objective == doctest::Approx(3.0));  // lambda=1, both q=1
    SeedingSolution sol = pipage_round(inst, lp, frac);
    CHECK(sol.first_stage == std::vector<std::uint32_t>{0});
    CHECK(sol.value == doctest::Approx(3.0));
}
