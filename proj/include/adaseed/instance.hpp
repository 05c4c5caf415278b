#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "adaseed/graph.hpp"

namespace adaseed {

// Two-stage seeding instance: a core set X and its one-hop neighborhood N(X).
// Neighbor data is indexed by a dense neighbor index; `neighbors[i]` maps
// back to the graph node id. Per-core incidence lists are sorted by
// non-increasing weight, ties broken by ascending node id. Downstream
// algorithms rely on that order and never re-sort.
struct BipartiteInstance {
    std::vector<NodeId> core;       // graph ids, ascending, deduplicated
    std::vector<NodeId> neighbors;  // graph ids, ascending

    std::vector<double> weight;  // per neighbor index
    std::vector<double> prob;    // per neighbor index

    // Side data filled by build_instance, empty on restored instances.
    std::vector<std::uint32_t> neighbor_degree;  // degree in the source graph
    std::vector<double> core_weight;             // own influence weight of each core member

    std::vector<std::vector<std::uint32_t>> core_adj;  // core index -> neighbor indices, weight-descending
    std::vector<std::vector<std::uint32_t>> parents;   // neighbor index -> core indices, ascending

    std::size_t core_size() const noexcept { return core.size(); }
    std::size_t neighbor_count() const noexcept { return neighbors.size(); }
};

struct BuildOptions {
    // When set, core members never appear on the neighbor side even if they
    // are adjacent to other core members.
    bool exclude_core_from_neighbors = false;
};

// node_weight/node_prob are defined over all graph nodes; probabilities must
// lie in [0,1]. Core ids must be valid; duplicates are collapsed.
BipartiteInstance build_instance(const Graph& g, std::span<const NodeId> core,
                                 std::span<const double> node_weight,
                                 std::span<const double> node_prob,
                                 const BuildOptions& opts = {});

struct ParadoxStats {
    double mean_degree_core = 0.0;
    double mean_degree_neighbors = 0.0;
    // (degree value, cumulative fraction of the population with degree <= value)
    std::vector<std::pair<std::uint32_t, double>> core_cdf;
    std::vector<std::pair<std::uint32_t, double>> neighbor_cdf;
};

ParadoxStats paradox_stats(const Graph& g, std::span<const NodeId> core);

// Tab separated incidence dump. Header line `#adaptive-seed-instance v1`,
// then one line per (core, neighbor) incidence:
//   core_id <TAB> neighbor_id <TAB> weight <TAB> probability
// Weights and probabilities are printed with round-trip precision, so
// dump + restore is exact. Core members without neighbors do not appear.
// Restored instances have empty neighbor_degree/core_weight side data.
void dump_instance(const BipartiteInstance& inst, std::ostream& out);
void dump_instance_file(const BipartiteInstance& inst, const std::string& path);

BipartiteInstance restore_instance(std::istream& in);
BipartiteInstance restore_instance_file(const std::string& path);

}  // namespace adaseed
