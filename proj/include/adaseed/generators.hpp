#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adaseed/graph.hpp"

namespace adaseed {

// Preferential attachment. Starts from a complete graph on m0 nodes, then
// each arriving node attaches `attach` edges to distinct existing nodes
// chosen proportionally to degree. Requires n >= m0 >= attach >= 1.
// n == m0 yields the seed clique only.
Graph barabasi_albert(std::size_t n, std::size_t m0, std::size_t attach, std::uint64_t seed);

// Ring lattice of even degree `ring_degree` < n, each lattice edge rewired
// with probability beta to a uniform non-duplicate endpoint.
Graph watts_strogatz(std::size_t n, std::size_t ring_degree, double beta, std::uint64_t seed);

constexpr std::size_t kron_default_node_cap = std::size_t(1) << 20;
constexpr std::size_t kron_default_entry_cap = std::size_t(1) << 27;

// Kronecker power of a small initiator (<= 8 nodes). The initiator matrix is
// the adjacency plus the identity, so powers stay connected. Node and entry
// counts are estimated upfront (nodes^power and nnz^power) and the call
// errors before allocating anything when a cap is exceeded.
Graph kronecker(const Graph& initiator, unsigned power,
                std::size_t node_cap = kron_default_node_cap,
                std::size_t entry_cap = kron_default_entry_cap);

// Star on `leaves` + 1 vertices, center id 0. Common Kronecker initiator.
Graph star_graph(unsigned leaves);

struct ConfigurationResult {
    Graph graph;
    std::size_t discarded_stubs = 0;  // stubs lost to self loops and duplicates
};

// Configuration model: stub matching with uniform pairing; self loops and
// duplicate edges are discarded and counted. Degree sum must be even and
// every degree < n.
ConfigurationResult configuration_model(std::span<const std::uint32_t> degree_sequence,
                                        std::uint64_t seed);

// Declarative form used by the CLI and bench configs.
struct GeneratorSpec {
    std::string kind;  // barabasi_albert | watts_strogatz | kronecker | configuration
    std::uint64_t seed = 1;
    std::size_t n = 0;
    std::size_t m0 = 10;
    std::size_t attach = 10;
    std::size_t ring_degree = 20;
    double beta = 0.3;
    unsigned power = 7;
    std::string initiator = "star4";     // star4 or a path to an edge list
    std::string degrees_file;            // configuration model input, one degree per line
};

Graph generate(const GeneratorSpec& spec);

}  // namespace adaseed
