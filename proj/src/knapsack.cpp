#include "adaseed/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adaseed {

void SortedItemList::build_prefix() {
    pp_.resize(items_.size() + 1);
    pv_.resize(items_.size() + 1);
    pp_[0] = 0.0;
    pv_[0] = 0.0;
    for (std::size_t i = 0; i < items_.size(); ++i) {
        pp_[i + 1] = pp_[i] + items_[i].prob;
        pv_[i + 1] = pv_[i] + items_[i].prob * items_[i].weight;
    }
}

SortedItemList SortedItemList::from_unsorted(std::vector<Item> items) {
    std::sort(items.begin(), items.end(), item_before);
    for (std::size_t i = 0; i + 1 < items.size(); ++i)
        if (items[i].id == items[i + 1].id)
            throw std::invalid_argument("SortedItemList: duplicate item id");
    SortedItemList lst;
    lst.items_ = std::move(items);
    lst.build_prefix();
    return lst;
}

SortedItemList SortedItemList::from_sorted(std::vector<Item> items) {
    for (std::size_t i = 0; i + 1 < items.size(); ++i) {
        if (!item_before(items[i], items[i + 1]))
            throw std::invalid_argument("SortedItemList: items not in canonical order");
    }
    SortedItemList lst;
    lst.items_ = std::move(items);
    lst.build_prefix();
    return lst;
}

double solve(const SortedItemList& items, double budget) {
    if (budget < 0.0) throw std::invalid_argument("knapsack solve: negative budget");
    // Largest prefix count c with prefix_prob(c) <= budget.
    auto& pp = items;
    std::size_t lo = 0, hi = items.size();
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (pp.prefix_prob(mid) <= budget)
            lo = mid;
        else
            hi = mid - 1;
    }
    double value = items.prefix_value(lo);
    if (lo < items.size()) value += (budget - items.prefix_prob(lo)) * items[lo].weight;
    return value;
}

Allocation solve_with_allocation(const SortedItemList& items, double budget) {
    if (budget < 0.0) throw std::invalid_argument("knapsack solve: negative budget");
    Allocation out;
    double spent = 0.0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const Item& it = items[i];
        if (it.prob <= 0.0) continue;
        if (spent + it.prob <= budget) {
            out.q.emplace_back(it.id, 1.0);
            out.value += it.prob * it.weight;
            spent += it.prob;
        } else {
            double q = (budget - spent) / it.prob;
            if (q > 0.0) out.q.emplace_back(it.id, q);
            out.value += (budget - spent) * it.weight;
            break;
        }
    }
    return out;
}

double merged_solve(const SortedItemList& a, const SortedItemList& b, double budget) {
    if (budget < 0.0) throw std::invalid_argument("knapsack solve: negative budget");
    // Accumulation mirrors the prefix-sum construction: cum_p and cum_v are
    // sequential sums, the fractional term is (budget - cum_p) * w. With b a
    // subset of a this reproduces solve(a, budget) bit for bit.
    std::size_t i = 0, j = 0;
    const std::size_t na = a.size(), nb = b.size();
    double cum_p = 0.0, cum_v = 0.0;
    while (i < na || j < nb) {
        const Item* it;
        if (i < na && j < nb) {
            if (a[i].id == b[j].id) {
                it = &a[i];
                ++i;
                ++j;
            } else if (item_before(a[i], b[j])) {
                it = &a[i];
                ++i;
            } else {
                it = &b[j];
                ++j;
            }
        } else if (i < na) {
            it = &a[i];
            ++i;
        } else {
            it = &b[j];
            ++j;
        }
        if (cum_p + it->prob <= budget) {
            cum_p += it->prob;
            cum_v += it->prob * it->weight;
        } else {
            cum_v += (budget - cum_p) * it->weight;
            return cum_v;
        }
    }
    return cum_v;
}

double marginal(const SortedItemList& base, const SortedItemList& add, double budget) {
    double with = merged_solve(base, add, budget);
    double without = solve(base, budget);
    double gain = with - without;
    if (gain < 0.0) {
        double scale = std::max(1.0, std::abs(without));
        if (gain > -1e-12 * scale) return 0.0;
        throw std::logic_error("knapsack marginal: negative beyond rounding noise");
    }
    return gain;
}

SortedItemList merge_union(const SortedItemList& a, const SortedItemList& b) {
    std::vector<Item> items;
    items.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (i < a.size() && j < b.size()) {
            if (a[i].id == b[j].id) {
                items.push_back(a[i]);
                ++i;
                ++j;
            } else if (item_before(a[i], b[j])) {
                items.push_back(a[i++]);
            } else {
                items.push_back(b[j++]);
            }
        } else if (i < a.size()) {
            items.push_back(a[i++]);
        } else {
            items.push_back(b[j++]);
        }
    }
    SortedItemList lst;
    lst.items_ = std::move(items);
    lst.build_prefix();
    return lst;
}

}  // namespace adaseed
