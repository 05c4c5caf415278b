#include "adaseed/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <thread>

#include "adaseed/rng.hpp"

namespace adaseed {

std::vector<unsigned> SplitStrategy::splits(unsigned k) const {
    std::vector<unsigned> out;
    if (k < 2) return out;
    if (mode == Mode::all) {
        for (unsigned t = 1; t < k; ++t) out.push_back(t);
        return out;
    }
    if (!(epsilon > 0.0)) throw std::invalid_argument("geometric splits need epsilon > 0");
    double x = 1.0;
    while (true) {
        unsigned t = static_cast<unsigned>(std::floor(x));
        if (t >= k - 1) break;
        if (out.empty() || out.back() != t) out.push_back(t);
        x *= 1.0 + epsilon;
    }
    out.push_back(k - 1);
    return out;
}

std::vector<SortedItemList> core_item_lists(const BipartiteInstance& inst) {
    std::vector<SortedItemList> lists;
    lists.reserve(inst.core_size());
    for (std::uint32_t ci = 0; ci < inst.core_size(); ++ci) {
        std::vector<Item> items;
        items.reserve(inst.core_adj[ci].size());
        for (std::uint32_t ni : inst.core_adj[ci])
            items.push_back({ni, inst.weight[ni], inst.prob[ni]});
        lists.push_back(SortedItemList::from_sorted(std::move(items)));
    }
    return lists;
}

namespace {

struct SplitOutcome {
    std::vector<std::uint32_t> chosen;  // pick order
    double final_value = 0.0;           // re-solved at budget k - |chosen|
};

SplitOutcome run_one_split(const BipartiteInstance& inst,
                           const std::vector<SortedItemList>& cores, unsigned t,
                           unsigned k, bool lazy) {
    const std::size_t m = inst.core_size();
    const unsigned first_budget = k - t;
    SortedItemList cur;
    std::vector<char> chosen_flag(m, 0);
    std::vector<std::uint32_t> chosen;
    double base_val = 0.0;

    if (!lazy) {
        for (unsigned step = 0; step < first_budget; ++step) {
            double best_gain = 0.0;
            std::size_t best_ci = m;
            for (std::size_t ci = 0; ci < m; ++ci) {
                if (chosen_flag[ci]) continue;
                double gain = merged_solve(cur, cores[ci], t) - base_val;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_ci = ci;
                }
            }
            if (best_ci == m) break;
            chosen_flag[best_ci] = 1;
            chosen.push_back(static_cast<std::uint32_t>(best_ci));
            cur = merge_union(cur, cores[best_ci]);
            base_val = solve(cur, t);
        }
    } else {
        // Lazy evaluation: stale gains are upper bounds under submodularity,
        // so a freshly recomputed top entry is the true argmax. Ordering on
        // (gain desc, index asc) matches the plain scan exactly.
        struct Entry {
            double gain;
            std::uint32_t ci;
            unsigned stamp;
        };
        auto worse = [](const Entry& a, const Entry& b) {
            if (a.gain != b.gain) return a.gain < b.gain;
            return a.ci > b.ci;
        };
        std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
        for (std::size_t ci = 0; ci < m; ++ci)
            heap.push({merged_solve(cur, cores[ci], t), static_cast<std::uint32_t>(ci), 1});

        for (unsigned step = 0; step < first_budget && !heap.empty();) {
            Entry e = heap.top();
            heap.pop();
            if (e.stamp != step + 1) {
                e.gain = merged_solve(cur, cores[e.ci], t) - base_val;
                e.stamp = step + 1;
                heap.push(e);
                continue;
            }
            if (e.gain <= 0.0) break;
            chosen_flag[e.ci] = 1;
            chosen.push_back(e.ci);
            cur = merge_union(cur, cores[e.ci]);
            base_val = solve(cur, t);
            ++step;
        }
    }

    SplitOutcome out;
    out.chosen = std::move(chosen);
    out.final_value = solve(cur, k - static_cast<unsigned>(out.chosen.size()));
    return out;
}

// Sampled estimate of the optimal fractional value of `merged(cur, extra)`
// at budget t: materialize the allocation up to the breakpoint, then average
// realized weight over `samples` draws.
double estimate_merged_value(const SortedItemList& cur, const SortedItemList& extra,
                             double t, std::size_t samples, std::uint64_t seed) {
    struct Sup {
        double take;  // p_u * q_u
        double w;
    };
    std::vector<Sup> support;
    double spent = 0.0;
    std::size_t i = 0, j = 0;
    while (i < cur.size() || j < extra.size()) {
        const Item* it;
        if (i < cur.size() && j < extra.size()) {
            if (cur[i].id == extra[j].id) {
                it = &cur[i];
                ++i;
                ++j;
            } else if (item_before(cur[i], extra[j])) {
                it = &cur[i++];
            } else {
                it = &extra[j++];
            }
        } else if (i < cur.size()) {
            it = &cur[i++];
        } else {
            it = &extra[j++];
        }
        if (it->prob <= 0.0) continue;
        if (spent + it->prob <= t) {
            support.push_back({it->prob, it->weight});
            spent += it->prob;
        } else {
            support.push_back({t - spent, it->weight});
            break;
        }
    }
    if (samples == 0 || support.empty()) return 0.0;
    Rng rng(seed);
    double acc = 0.0;
    for (std::size_t s = 0; s < samples; ++s)
        for (const Sup& su : support)
            if (rng.bernoulli(su.take)) acc += su.w;
    return acc / static_cast<double>(samples);
}

SplitOutcome run_one_split_sampled(const BipartiteInstance& inst,
                                   const std::vector<SortedItemList>& cores, unsigned t,
                                   unsigned k, std::size_t samples, std::uint64_t seed) {
    const std::size_t m = inst.core_size();
    const unsigned first_budget = k - t;
    SortedItemList cur;
    static const SortedItemList empty_list;
    std::vector<char> chosen_flag(m, 0);
    std::vector<std::uint32_t> chosen;

    for (unsigned step = 0; step < first_budget; ++step) {
        double base_est =
            estimate_merged_value(cur, empty_list, t, samples, mix_seed(seed, t, step));
        double best_est = base_est;
        std::size_t best_ci = m;
        for (std::size_t ci = 0; ci < m; ++ci) {
            if (chosen_flag[ci]) continue;
            double est = estimate_merged_value(cur, cores[ci], t, samples,
                                               mix_seed(seed, t, step * m + m + ci));
            if (est > best_est) {
                best_est = est;
                best_ci = ci;
            }
        }
        if (best_ci == m) break;
        chosen_flag[best_ci] = 1;
        chosen.push_back(static_cast<std::uint32_t>(best_ci));
        cur = merge_union(cur, cores[best_ci]);
    }

    SplitOutcome out;
    out.chosen = std::move(chosen);
    out.final_value = solve(cur, k - static_cast<unsigned>(out.chosen.size()));
    return out;
}

SeedingSolution finalize(const std::vector<SortedItemList>& cores,
                         std::vector<std::uint32_t> chosen, unsigned k,
                         std::vector<std::pair<unsigned, double>> split_values) {
    SortedItemList cur;
    for (std::uint32_t ci : chosen) cur = merge_union(cur, cores[ci]);
    const double budget2 = static_cast<double>(k) - static_cast<double>(chosen.size());
    Allocation alloc = solve_with_allocation(cur, budget2);

    SeedingSolution sol;
    std::sort(chosen.begin(), chosen.end());
    sol.first_stage = std::move(chosen);
    sol.second_stage_budget = budget2;
    sol.allocation = std::move(alloc.q);
    sol.value = alloc.value;
    sol.split_values = std::move(split_values);
    return sol;
}

}  // namespace

GreedyResult greedy_for_split(const BipartiteInstance& inst,
                              const std::vector<SortedItemList>& cores, unsigned t,
                              unsigned first_budget) {
    if (cores.size() != inst.core_size())
        throw std::invalid_argument("greedy_for_split: core list mismatch");
    if (t == 0) throw std::invalid_argument("greedy_for_split: split must be positive");
    // Run with k = t + first_budget, then report the value at budget t.
    SplitOutcome o = run_one_split(inst, cores, t, t + first_budget, false);
    SortedItemList cur;
    for (std::uint32_t ci : o.chosen) cur = merge_union(cur, cores[ci]);
    return {o.chosen, solve(cur, t)};
}

SeedingSolution run(const BipartiteInstance& inst, unsigned k, const GreedyOptions& opts) {
    SeedingSolution sol;
    if (k < 2) {
        sol.note = "budget below 2 leaves no room for a two-stage split";
        sol.second_stage_budget = k;
        return sol;
    }
    const std::vector<SortedItemList> cores = core_item_lists(inst);
    const std::vector<unsigned> ts = opts.strategy.splits(k);

    std::vector<SplitOutcome> outcomes(ts.size());
    const unsigned workers = std::max(1u, opts.workers);
    auto work = [&](unsigned tid) {
        for (std::size_t i = tid; i < ts.size(); i += workers) {
            outcomes[i] = opts.saa_samples > 0
                              ? run_one_split_sampled(inst, cores, ts[i], k, opts.saa_samples,
                                                      opts.saa_seed)
                              : run_one_split(inst, cores, ts[i], k, opts.lazy);
        }
    };
    if (workers == 1 || ts.size() <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    std::size_t best = 0;
    std::vector<std::pair<unsigned, double>> split_values;
    split_values.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        split_values.emplace_back(ts[i], outcomes[i].final_value);
        if (outcomes[i].final_value > outcomes[best].final_value) best = i;
    }
    return finalize(cores, std::move(outcomes[best].chosen), k, std::move(split_values));
}

SeedingSolution run_sample_and_prune(const BipartiteInstance& inst, unsigned k,
                                     double epsilon, std::size_t sample_size,
                                     std::uint64_t seed, SamplePruneStats* stats) {
    SeedingSolution sol;
    if (k < 2) {
        sol.note = "budget below 2 leaves no room for a two-stage split";
        sol.second_stage_budget = k;
        return sol;
    }
    if (!(epsilon > 0.0)) throw std::invalid_argument("sample_and_prune: epsilon must be > 0");
    if (sample_size == 0) throw std::invalid_argument("sample_and_prune: sample size must be > 0");

    const std::vector<SortedItemList> cores = core_item_lists(inst);
    const std::size_t m = inst.core_size();

    double delta = 0.0, max_gain = 0.0;
    for (std::size_t v = 0; v < inst.weight.size(); ++v) {
        delta = std::max(delta, inst.weight[v]);
        max_gain = std::max(max_gain, inst.prob[v] * inst.weight[v]);
    }
    SamplePruneStats local{};
    SeedingSolution best_sol;
    double best_value = -1.0;
    std::vector<std::pair<unsigned, double>> split_values;

    if (max_gain <= 0.0) {  // nothing on the neighbor side carries value
        sol.second_stage_budget = k - 1;
        sol.split_values.emplace_back(1, 0.0);
        if (stats) *stats = local;
        return sol;
    }
    // The ladder starts at delta (an upper bound on any marginal) and must
    // descend far enough that what it leaves on the table is only an epsilon
    // fraction of the optimum; max_gain lower-bounds the optimum once k >= 2.
    const double floor_threshold = epsilon * max_gain / (2.0 * k);
    const std::size_t rounds =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(
                                     std::log(delta / floor_threshold) / std::log1p(epsilon))));

    for (unsigned t = 1; t < k; ++t) {
        const unsigned first_budget = k - t;
        SortedItemList cur;
        std::vector<char> chosen_flag(m, 0);
        std::vector<std::uint32_t> chosen;
        Rng rng(mix_seed(seed, t));

        for (std::size_t i = 1; i <= rounds && chosen.size() < first_budget; ++i) {
            const double threshold = delta / std::pow(1.0 + epsilon, static_cast<double>(i));
            std::vector<std::uint32_t> universe;
            for (std::uint32_t ci = 0; ci < m; ++ci)
                if (!chosen_flag[ci] && marginal(cur, cores[ci], t) >= threshold)
                    universe.push_back(ci);

            while (!universe.empty() && chosen.size() < first_budget) {
                ++local.rounds;
                // Draw min(sample_size, |U|) distinct elements, then process
                // them in ascending index order.
                std::size_t take = std::min(sample_size, universe.size());
                for (std::size_t s = 0; s < take; ++s) {
                    std::size_t r = s + rng.below(universe.size() - s);
                    std::swap(universe[s], universe[r]);
                }
                std::vector<std::uint32_t> batch(universe.begin(), universe.begin() + take);
                std::sort(batch.begin(), batch.end());
                local.max_sample = std::max(local.max_sample, batch.size());

                for (std::uint32_t ci : batch) {
                    if (chosen.size() >= first_budget) break;
                    if (marginal(cur, cores[ci], t) >= threshold) {
                        chosen_flag[ci] = 1;
                        chosen.push_back(ci);
                        cur = merge_union(cur, cores[ci]);
                    }
                }
                // Prune: everything sampled this pass fails the test below
                // (accepted members have zero marginal), so U shrinks by at
                // least `take` per pass.
                std::vector<std::uint32_t> next_u;
                for (std::uint32_t ci : universe)
                    if (!chosen_flag[ci] && marginal(cur, cores[ci], t) >= threshold)
                        next_u.push_back(ci);
                universe.swap(next_u);
            }
        }

        const double final_value = solve(cur, k - static_cast<unsigned>(chosen.size()));
        split_values.emplace_back(t, final_value);
        if (final_value > best_value) {
            best_value = final_value;
            best_sol = finalize(cores, std::move(chosen), k, {});
        }
    }
    best_sol.split_values = std::move(split_values);
    if (stats) *stats = local;
    return best_sol;
}

}  // namespace adaseed
