#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adaseed {

using NodeId = std::uint32_t;

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Immutable undirected simple graph in compressed adjacency form.
// Node ids are dense 0..n-1, adjacency lists sorted ascending.
// Self loops are dropped and duplicate edges collapsed at construction.
class Graph {
public:
    Graph() = default;

    // `original_ids` maps dense id -> external id; identity when empty.
    Graph(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edges,
          std::vector<std::int64_t> original_ids = {});

    std::size_t node_count() const noexcept {
        return offsets_.empty() ? 0 : offsets_.size() - 1;
    }
    std::size_t edge_count() const noexcept { return adj_.size() / 2; }

    std::uint32_t degree(NodeId u) const {
        return static_cast<std::uint32_t>(offsets_[u + 1] - offsets_[u]);
    }
    std::span<const NodeId> neighbors(NodeId u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }

    std::int64_t original_id(NodeId u) const {
        return original_ids_.empty() ? static_cast<std::int64_t>(u) : original_ids_[u];
    }

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> adj_;
    std::vector<std::int64_t> original_ids_;  // empty means identity
};

// SNAP style edge list: two integer tokens per non-comment line, lines
// starting with '#' ignored, blank lines ignored. Sparse external ids are
// compacted to 0..n-1 in ascending order of the external id. Errors carry
// the 1-based line number. An input with no edges is an error.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

// One edge per line, external ids, smaller endpoint first, lines sorted.
// Loading the output yields an identical graph.
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

}  // namespace adaseed
