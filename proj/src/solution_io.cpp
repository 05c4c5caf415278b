#include "adaseed/solution_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "adaseed/instance.hpp"

namespace adaseed {

namespace {

constexpr const char* kHeader = "#adaptive-seed-solution v1";

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double parse_double(const std::string& s, const char* what) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(std::string("solution: bad ") + what + ": '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(std::string("solution: bad ") + what + ": '" + s + "'");
    return v;
}

}  // namespace

SolutionRecord to_record(const SeedingSolution& sol, const BipartiteInstance& inst,
                         const std::string& algo, unsigned k) {
    SolutionRecord rec;
    rec.algo = algo;
    rec.k = k;
    rec.second_stage_budget = sol.second_stage_budget;
    rec.value = sol.value;
    rec.first_stage.reserve(sol.first_stage.size());
    for (std::uint32_t ci : sol.first_stage)
        rec.first_stage.push_back(inst.core[ci]);
    rec.allocation.reserve(sol.allocation.size());
    for (const auto& [ni, q] : sol.allocation)
        rec.allocation.emplace_back(inst.neighbors[ni], q);
    return rec;
}

void write_solution(const SolutionRecord& rec, std::ostream& out) {
    out << kHeader << '\n';
    out << "algo " << rec.algo << '\n';
    out << "k " << rec.k << '\n';
    out << "second_stage_budget " << fmt_double(rec.second_stage_budget) << '\n';
    out << "value " << fmt_double(rec.value) << '\n';
    for (NodeId id : rec.first_stage) out << "s " << id << '\n';
    for (const auto& [id, q] : rec.allocation) out << "q " << id << ' ' << fmt_double(q) << '\n';
}

void write_solution_file(const SolutionRecord& rec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_solution(rec, out);
}

SolutionRecord read_solution(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw std::runtime_error("solution: missing header");
    SolutionRecord rec;
    bool saw_algo = false, saw_k = false, saw_value = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "algo") {
            ls >> rec.algo;
            saw_algo = true;
        } else if (tag == "k") {
            std::string v;
            ls >> v;
            rec.k = static_cast<unsigned>(parse_u64(v, "k"));
            saw_k = true;
        } else if (tag == "second_stage_budget") {
            std::string v;
            ls >> v;
            rec.second_stage_budget = parse_double(v, "second_stage_budget");
        } else if (tag == "value") {
            std::string v;
            ls >> v;
            rec.value = parse_double(v, "value");
            saw_value = true;
        } else if (tag == "s") {
            std::string v;
            ls >> v;
            rec.first_stage.push_back(static_cast<NodeId>(parse_u64(v, "seed id")));
        } else if (tag == "q") {
            std::string id, frac;
            ls >> id >> frac;
            rec.allocation.emplace_back(static_cast<NodeId>(parse_u64(id, "allocation id")),
                                        parse_double(frac, "allocation fraction"));
        } else {
            throw std::runtime_error("solution: unknown tag '" + tag + "'");
        }
    }
    if (!saw_algo || !saw_k || !saw_value)
        throw std::runtime_error("solution: missing algo, k, or value line");
    return rec;
}

SolutionRecord read_solution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open solution file: " + path);
    return read_solution(in);
}

std::vector<std::uint32_t> record_core_indices(const SolutionRecord& rec,
                                               const BipartiteInstance& inst) {
    std::vector<std::uint32_t> out;
    out.reserve(rec.first_stage.size());
    for (NodeId id : rec.first_stage) {
        auto it = std::lower_bound(inst.core.begin(), inst.core.end(), id);
        if (it == inst.core.end() || *it != id)
            throw std::runtime_error("solution names a node outside the instance core: " +
                                     std::to_string(id));
        out.push_back(static_cast<std::uint32_t>(it - inst.core.begin()));
    }
    return out;
}

}  // namespace adaseed
