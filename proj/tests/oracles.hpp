#pragma once

// Independent reference implementations used only by tests. Everything here
// is deliberately brute force: enumeration over subsets or realizations,
// no prefix sums, no pruning. Keep instances tiny.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "adaseed/instance.hpp"
#include "adaseed/knapsack.hpp"
#include "adaseed/rng.hpp"

namespace oracles {

// Optimal value of  max sum q_i p_i w_i  s.t.  sum q_i p_i <= budget,
// 0 <= q_i <= 1. Some vertex of the feasible polytope has at most one
// fractional coordinate, so enumerating (full subset, fractional extra)
// pairs is exact. 2^n * (n+1) combinations.
inline double brute_knapsack(std::span<const adaseed::Item> items, double budget) {
    const std::size_t n = items.size();
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double used = 0.0, value = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                used += items[i].prob;
                value += items[i].prob * items[i].weight;
            }
        if (used > budget + 1e-12) continue;
        best = std::max(best, value);
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) continue;
            if (items[i].prob <= 0.0) continue;
            double q = std::min(1.0, (budget - used) / items[i].prob);
            if (q < 0.0) q = 0.0;
            best = std::max(best, value + q * items[i].prob * items[i].weight);
        }
    }
    return best;
}

// Knapsack union of the neighborhoods of S, solved by the library oracle.
inline double relaxed_value(const std::vector<adaseed::SortedItemList>& cores,
                            std::span<const std::uint32_t> S, double budget) {
    adaseed::SortedItemList cur;
    for (std::uint32_t ci : S) cur = adaseed::merge_union(cur, cores[ci]);
    return adaseed::solve(cur, budget);
}

// OPT of the non-adaptive relaxation by enumerating every first-stage set.
inline double exhaustive_opt_na(const std::vector<adaseed::SortedItemList>& cores,
                                unsigned k) {
    const std::size_t m = cores.size();
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<std::uint32_t> S;
        for (std::uint32_t ci = 0; ci < m; ++ci)
            if (mask & (1u << ci)) S.push_back(ci);
        if (S.size() > k) continue;
        best = std::max(best, relaxed_value(cores, S, double(k) - double(S.size())));
    }
    return best;
}

// Expected adaptive value of (S, j) by enumerating all 2^|N(S)| realizations.
inline double enumerate_adaptive_value(const adaseed::BipartiteInstance& inst,
                                       std::span<const std::uint32_t> S, unsigned j) {
    std::vector<char> mark(inst.neighbor_count(), 0);
    for (std::uint32_t ci : S)
        for (std::uint32_t ni : inst.core_adj[ci]) mark[ni] = 1;
    std::vector<std::uint32_t> ns;
    for (std::uint32_t ni = 0; ni < inst.neighbor_count(); ++ni)
        if (mark[ni]) ns.push_back(ni);

    const std::size_t n = ns.size();
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double pr = 1.0;
        std::vector<double> realized;
        for (std::size_t i = 0; i < n; ++i) {
            double p = inst.prob[ns[i]];
            if (mask & (1u << i)) {
                pr *= p;
                realized.push_back(inst.weight[ns[i]]);
            } else {
                pr *= 1.0 - p;
            }
        }
        if (pr == 0.0) continue;
        std::sort(realized.begin(), realized.end(), std::greater<>());
        double value = 0.0;
        for (std::size_t i = 0; i < std::min<std::size_t>(j, realized.size()); ++i)
            value += realized[i];
        total += pr * value;
    }
    return total;
}

// Random bipartite instance with adversarial shapes: weight ties, zero
// weights, zero and one probabilities, shared neighbors. Indices double as
// graph ids, so `core` is 0..m-1 and `neighbors` is m..m+n-1.
inline adaseed::BipartiteInstance random_instance(adaseed::Rng& rng, std::size_t m,
                                                  std::size_t n) {
    adaseed::BipartiteInstance inst;
    for (std::uint32_t i = 0; i < m; ++i) inst.core.push_back(i);
    for (std::uint32_t i = 0; i < n; ++i)
        inst.neighbors.push_back(static_cast<adaseed::NodeId>(m + i));

    inst.weight.resize(n);
    inst.prob.resize(n);
    inst.neighbor_degree.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (rng.below(5)) {
            case 0: inst.weight[i] = 0.0; break;
            case 1: inst.weight[i] = 2.0; break;  // deliberate ties
            default: inst.weight[i] = 0.25 * double(1 + rng.below(40)); break;
        }
        switch (rng.below(6)) {
            case 0: inst.prob[i] = 0.0; break;
            case 1: inst.prob[i] = 1.0; break;
            default: inst.prob[i] = 0.125 * double(1 + rng.below(8)); break;
        }
        inst.neighbor_degree[i] = 1 + static_cast<std::uint32_t>(rng.below(9));
    }

    inst.core_weight.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        inst.core_weight[i] = 0.5 * double(rng.below(20));

    // Every neighbor gets one parent, then extra incidences at random.
    inst.parents.assign(n, {});
    std::vector<std::vector<std::uint32_t>> adj(m);
    for (std::uint32_t ni = 0; ni < n; ++ni) {
        std::uint32_t ci = static_cast<std::uint32_t>(rng.below(m));
        adj[ci].push_back(ni);
        inst.parents[ni].push_back(ci);
    }
    for (std::uint32_t ci = 0; ci < m; ++ci)
        for (std::uint32_t ni = 0; ni < n; ++ni)
            if (rng.bernoulli(0.25) &&
                std::find(adj[ci].begin(), adj[ci].end(), ni) == adj[ci].end()) {
                adj[ci].push_back(ni);
                inst.parents[ni].push_back(ci);
            }

    inst.core_adj.resize(m);
    for (std::uint32_t ci = 0; ci < m; ++ci) {
        std::sort(adj[ci].begin(), adj[ci].end(), [&](std::uint32_t a, std::uint32_t b) {
            if (inst.weight[a] != inst.weight[b]) return inst.weight[a] > inst.weight[b];
            return a < b;
        });
        inst.core_adj[ci] = std::move(adj[ci]);
    }
    for (auto& p : inst.parents) std::sort(p.begin(), p.end());
    return inst;
}

}  // namespace oracles
