#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace adaseed {

// Fractional knapsack over items with value rate `weight` and capacity use
// `prob`. The optimum of
//   max sum q_u p_u w_u  s.t.  sum q_u p_u <= budget, 0 <= q_u <= 1
// is the greedy prefix in weight order plus one fractional item, so
// everything here is prefix sums over a canonically sorted list.

struct Item {
    std::uint32_t id;  // neighbor index
    double weight;
    double prob;
};

// Canonical order: weight descending, id ascending.
inline bool item_before(const Item& a, const Item& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.id < b.id;
}

class SortedItemList {
public:
    SortedItemList() = default;

    static SortedItemList from_unsorted(std::vector<Item> items);
    // Asserts the canonical order and distinct ids instead of sorting.
    static SortedItemList from_sorted(std::vector<Item> items);

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    const Item& operator[](std::size_t i) const { return items_[i]; }
    std::span<const Item> items() const noexcept { return items_; }

    // Sequential prefix sums over the first i items, i in [0, size].
    double prefix_prob(std::size_t i) const { return pp_[i]; }
    double prefix_value(std::size_t i) const { return pv_[i]; }
    double total_prob() const { return pp_.back(); }
    double total_value() const { return pv_.back(); }

private:
    std::vector<Item> items_;
    std::vector<double> pp_{0.0}, pv_{0.0};
    void build_prefix();
    friend SortedItemList merge_union(const SortedItemList&, const SortedItemList&);
};

// Optimum value for the list under `budget`. budget < 0 is an error;
// budget 0 gives 0; zero-probability items contribute nothing and are never
// the fractional breakpoint. O(log n) via prefix sums.
double solve(const SortedItemList& items, double budget);

struct Allocation {
    double value = 0.0;
    // (item id, q) for q > 0.
    std::vector<std::pair<std::uint32_t, double>> q;
};

Allocation solve_with_allocation(const SortedItemList& items, double budget);

// Optimum over the union of two sorted lists without materializing it.
// Duplicate ids (same item in both lists) are counted once. The scan walks
// both lists in canonical order and stops as soon as the budget is spent,
// so the cost is the number of items ahead of the breakpoint, not n.
// Accumulation mirrors solve() exactly: merged_solve(a, b, budget) with
// b's items all contained in a returns bitwise the same value as
// solve(a, budget).
double merged_solve(const SortedItemList& a, const SortedItemList& b, double budget);

// merged_solve(base, add, budget) - solve(base, budget). Mathematically
// nonnegative; values inside a relative epsilon below zero are clamped to 0.
double marginal(const SortedItemList& base, const SortedItemList& add, double budget);

// Materialized union, duplicate ids collapsed.
SortedItemList merge_union(const SortedItemList& a, const SortedItemList& b);

}  // namespace adaseed
