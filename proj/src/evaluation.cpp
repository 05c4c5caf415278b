#include "adaseed/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "adaseed/greedy.hpp"
#include "adaseed/knapsack.hpp"
#include "adaseed/rng.hpp"

namespace adaseed {

std::vector<std::uint32_t> baseline_rn(const BipartiteInstance& inst, unsigned k,
                                       std::uint64_t seed) {
    const std::size_t m = inst.core_size();
    if (k > m) throw std::invalid_argument("baseline_rn: k exceeds core size");
    std::vector<std::uint32_t> pool(m);
    for (std::uint32_t i = 0; i < m; ++i) pool[i] = i;
    Rng rng(seed);
    for (std::size_t s = 0; s < k; ++s) {
        std::size_t r = s + rng.below(m - s);
        std::swap(pool[s], pool[r]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<std::uint32_t> baseline_im(const BipartiteInstance& inst, unsigned k,
                                       std::span<const double> core_weights) {
    const std::size_t m = inst.core_size();
    if (core_weights.size() != m)
        throw std::invalid_argument("baseline_im: weight span must cover the core");
    if (k > m) throw std::invalid_argument("baseline_im: k exceeds core size");
    std::vector<std::uint32_t> order(m);
    for (std::uint32_t i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return core_weights[a] > core_weights[b];
    });
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<std::uint32_t> baseline_im(const BipartiteInstance& inst, unsigned k) {
    if (inst.core_weight.size() != inst.core_size())
        throw std::runtime_error(
            "baseline_im: instance has no core weights (restored from a dump); pass them explicitly");
    return baseline_im(inst, k, inst.core_weight);
}

RfSelection baseline_rf(const BipartiteInstance& inst, unsigned k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("baseline_rf: k must be at least 2");
    const unsigned half = (k + 1) / 2;
    RfSelection sel;
    sel.first_stage = baseline_rn(inst, std::min<unsigned>(half, inst.core_size()), seed);

    Rng rng(mix_seed(seed, 0x5f));
    std::vector<std::uint32_t> picks;
    for (std::uint32_t ci : sel.first_stage) {
        const auto& adj = inst.core_adj[ci];
        if (adj.empty()) continue;  // a friendless pick spends its slot on nothing
        picks.push_back(adj[rng.below(adj.size())]);
    }
    std::sort(picks.begin(), picks.end());
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
    sel.chosen_neighbors = std::move(picks);
    for (std::uint32_t ni : sel.chosen_neighbors)
        sel.expected_value += inst.prob[ni] * inst.weight[ni];
    return sel;
}

namespace {

// Neighborhood of S sorted by (weight desc, index asc), the order in which a
// second stage would admit realized nodes.
std::vector<std::uint32_t> sorted_neighborhood(const BipartiteInstance& inst,
                                               std::span<const std::uint32_t> S) {
    std::vector<char> mark(inst.neighbor_count(), 0);
    for (std::uint32_t ci : S) {
        if (ci >= inst.core_size())
            throw std::invalid_argument("evaluation: core index out of range");
        for (std::uint32_t ni : inst.core_adj[ci]) mark[ni] = 1;
    }
    std::vector<std::uint32_t> ns;
    for (std::uint32_t ni = 0; ni < inst.neighbor_count(); ++ni)
        if (mark[ni]) ns.push_back(ni);
    std::sort(ns.begin(), ns.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (inst.weight[a] != inst.weight[b]) return inst.weight[a] > inst.weight[b];
        return a < b;
    });
    return ns;
}

}  // namespace

double adaptive_value_exact(const BipartiteInstance& inst,
                            std::span<const std::uint32_t> S, unsigned j,
                            std::size_t neighborhood_cap) {
    std::vector<std::uint32_t> ns = sorted_neighborhood(inst, S);
    if (ns.size() > neighborhood_cap)
        throw std::runtime_error("adaptive_value_exact: neighborhood of " +
                                 std::to_string(ns.size()) +
                                 " nodes exceeds the cap; use the Monte Carlo estimator");
    if (j == 0 || ns.empty()) return 0.0;

    // c[r] = P(exactly r realized among nodes processed so far) for r < j,
    // c[j] = P(at least j). A node is admitted when fewer than j heavier
    // nodes realized, which is independent of its own coin.
    std::vector<double> c(static_cast<std::size_t>(j) + 1, 0.0);
    c[0] = 1.0;
    double value = 0.0;
    for (std::uint32_t ni : ns) {
        const double p = inst.prob[ni];
        value += p * inst.weight[ni] * (1.0 - c[j]);
        c[j] += c[j - 1] * p;
        for (unsigned r = j - 1; r >= 1; --r) c[r] = c[r] * (1.0 - p) + c[r - 1] * p;
        c[0] *= 1.0 - p;
    }
    return value;
}

McEstimate adaptive_value_mc(const BipartiteInstance& inst,
                             std::span<const std::uint32_t> S, unsigned j,
                             std::size_t samples, std::uint64_t seed, unsigned workers) {
    std::vector<std::uint32_t> ns = sorted_neighborhood(inst, S);
    McEstimate est;
    est.samples = samples;
    if (samples == 0 || ns.empty() || j == 0) return est;

    // Fixed block partition: block count and block seeds depend only on
    // `samples` and `seed`, never on `workers`. Per-block sums are combined
    // in block order, so the estimate is byte-stable at any thread count.
    constexpr std::size_t block_size = 4096;
    const std::size_t nblocks = (samples + block_size - 1) / block_size;
    std::vector<double> bsum(nblocks, 0.0), bsq(nblocks, 0.0);

    auto run_block = [&](std::size_t bi) {
        const std::size_t lo = bi * block_size;
        const std::size_t hi = std::min(samples, lo + block_size);
        Rng rng(mix_seed(seed, bi));
        double s = 0.0, s2 = 0.0;
        for (std::size_t it = lo; it < hi; ++it) {
            double v = 0.0;
            unsigned taken = 0;
            for (std::uint32_t ni : ns) {
                if (!rng.bernoulli(inst.prob[ni])) continue;
                v += inst.weight[ni];
                if (++taken == j) break;
            }
            s += v;
            s2 += v * v;
        }
        bsum[bi] = s;
        bsq[bi] = s2;
    };

    workers = std::max(1u, workers);
    if (workers == 1 || nblocks <= 1) {
        for (std::size_t bi = 0; bi < nblocks; ++bi) run_block(bi);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t bi = w; bi < nblocks; bi += workers) run_block(bi);
            });
        for (auto& th : pool) th.join();
    }

    double sum = 0.0, sumsq = 0.0;
    for (std::size_t bi = 0; bi < nblocks; ++bi) {
        sum += bsum[bi];
        sumsq += bsq[bi];
    }
    const double nn = static_cast<double>(samples);
    est.mean = sum / nn;
    if (samples > 1) {
        double var = (sumsq - sum * sum / nn) / (nn - 1.0);
        est.stderr_ = std::sqrt(std::max(0.0, var) / nn);
    }
    return est;
}

namespace {

// One realization skips the binomial draw for the budget cut: the sample
// stops early once `j` realized nodes are admitted, identical in
// distribution to drawing everything.
double mc_bernoulli_sum(const std::vector<std::pair<double, double>>& take_w,
                        std::size_t samples, std::uint64_t seed) {
    if (samples == 0) return 0.0;
    constexpr std::size_t block_size = 4096;
    const std::size_t nblocks = (samples + block_size - 1) / block_size;
    double total = 0.0;
    for (std::size_t bi = 0; bi < nblocks; ++bi) {
        const std::size_t lo = bi * block_size;
        const std::size_t hi = std::min(samples, lo + block_size);
        Rng rng(mix_seed(seed, bi));
        double s = 0.0;
        for (std::size_t it = lo; it < hi; ++it)
            for (const auto& [take, w] : take_w)
                if (rng.bernoulli(take)) s += w;
        total += s;
    }
    return total / static_cast<double>(samples);
}

}  // namespace

double estimate_relaxation_value(const BipartiteInstance& inst,
                                 std::span<const double> q, std::size_t samples,
                                 std::uint64_t seed) {
    if (q.size() != inst.neighbor_count())
        throw std::invalid_argument("estimate_relaxation_value: q must cover all neighbors");
    std::vector<std::pair<double, double>> take_w;
    for (std::size_t u = 0; u < q.size(); ++u) {
        if (!(q[u] >= 0.0 && q[u] <= 1.0))
            throw std::invalid_argument("estimate_relaxation_value: q outside [0,1]");
        double take = inst.prob[u] * q[u];
        if (take > 0.0) take_w.emplace_back(take, inst.weight[u]);
    }
    return mc_bernoulli_sum(take_w, samples, seed);
}

AdaptivityGapReport audit_adaptivity_gap(const BipartiteInstance& inst, unsigned k) {
    const std::size_t m = inst.core_size();
    if (m > 10 || inst.neighbor_count() > 12)
        throw std::invalid_argument("audit_adaptivity_gap: instance too large for exhaustion");
    if (k > m + inst.neighbor_count())
        throw std::invalid_argument("audit_adaptivity_gap: budget exceeds instance");

    const std::vector<SortedItemList> cores = core_item_lists(inst);
    AdaptivityGapReport rep;

    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<std::uint32_t> S;
        for (std::uint32_t ci = 0; ci < m; ++ci)
            if (mask & (1u << ci)) S.push_back(ci);
        if (S.size() > k) continue;
        const unsigned j = k - static_cast<unsigned>(S.size());

        double adaptive = adaptive_value_exact(inst, S, j);
        if (adaptive > rep.opt_adaptive) {
            rep.opt_adaptive = adaptive;
            rep.best_adaptive_set = S;
        }
        SortedItemList cur;
        for (std::uint32_t ci : S) cur = merge_union(cur, cores[ci]);
        double relaxed = solve(cur, j);
        if (relaxed > rep.opt_non_adaptive) {
            rep.opt_non_adaptive = relaxed;
            rep.best_non_adaptive_set = S;
        }
    }
    if (rep.opt_adaptive > rep.opt_non_adaptive + 1e-9)
        throw std::logic_error("adaptivity audit: relaxation failed to dominate");
    return rep;
}

}  // namespace adaseed
