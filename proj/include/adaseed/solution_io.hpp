#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "adaseed/greedy.hpp"
#include "adaseed/instance.hpp"

namespace adaseed {

// Plain-text solution record. Graph node ids, not dense indices, so a
// record stays meaningful next to the instance dump:
//   #adaptive-seed-solution v1
//   algo <name>
//   k <int>
//   second_stage_budget <number>
//   value <number>
//   s <core node id>            one line per first-stage pick
//   q <neighbor node id> <frac> one line per positive allocation entry
struct SolutionRecord {
    std::string algo;
    unsigned k = 0;
    double second_stage_budget = 0.0;
    double value = 0.0;
    std::vector<NodeId> first_stage;  // graph ids
    std::vector<std::pair<NodeId, double>> allocation;
};

SolutionRecord to_record(const SeedingSolution& sol, const BipartiteInstance& inst,
                         const std::string& algo, unsigned k);

void write_solution(const SolutionRecord& rec, std::ostream& out);
void write_solution_file(const SolutionRecord& rec, const std::string& path);
SolutionRecord read_solution(std::istream& in);
SolutionRecord read_solution_file(const std::string& path);

// Maps record first-stage node ids back to core indices of `inst`.
// Unknown ids are an error.
std::vector<std::uint32_t> record_core_indices(const SolutionRecord& rec,
                                               const BipartiteInstance& inst);

}  // namespace adaseed
