#include "adaseed/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "adaseed/rng.hpp"

namespace adaseed {

Graph barabasi_albert(std::size_t n, std::size_t m0, std::size_t attach, std::uint64_t seed) {
    if (attach < 1 || m0 < attach || n < m0)
        throw std::invalid_argument("barabasi_albert: need n >= m0 >= attach >= 1");

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(m0 * (m0 - 1) / 2 + (n - m0) * attach);
    // Each edge endpoint appears once per incidence; sampling an index
    // uniformly from this list is degree-proportional sampling.
    std::vector<NodeId> chances;
    chances.reserve(2 * edges.capacity());

    for (NodeId a = 0; a + 1 < m0; ++a)
        for (NodeId b = a + 1; b < m0; ++b) {
            edges.emplace_back(a, b);
            chances.push_back(a);
            chances.push_back(b);
        }

    Rng rng(seed);
    std::vector<NodeId> targets;
    targets.reserve(attach);
    for (NodeId v = static_cast<NodeId>(m0); v < n; ++v) {
        targets.clear();
        while (targets.size() < attach) {
            NodeId t = chances.empty() ? static_cast<NodeId>(rng.below(v))
                                       : chances[rng.below(chances.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        for (NodeId t : targets) {
            edges.emplace_back(t, v);
            chances.push_back(t);
            chances.push_back(v);
        }
    }
    return Graph(static_cast<NodeId>(n), std::move(edges));
}

Graph watts_strogatz(std::size_t n, std::size_t ring_degree, double beta, std::uint64_t seed) {
    if (ring_degree == 0 || ring_degree % 2 != 0 || ring_degree >= n)
        throw std::invalid_argument("watts_strogatz: ring_degree must be even, positive and < n");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::invalid_argument("watts_strogatz: beta must lie in [0,1]");

    auto pack = [](NodeId a, NodeId b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(n * ring_degree / 2);
    std::unordered_set<std::uint64_t> present;
    present.reserve(n * ring_degree);
    for (NodeId u = 0; u < n; ++u)
        for (std::size_t j = 1; j <= ring_degree / 2; ++j) {
            NodeId v = static_cast<NodeId>((u + j) % n);
            edges.emplace_back(u, v);
            present.insert(pack(u, v));
        }

    Rng rng(seed);
    for (auto& [u, v] : edges) {
        if (!rng.bernoulli(beta)) continue;
        bool rewired = false;
        for (std::size_t tries = 0; tries < 2 * n; ++tries) {
            NodeId w = static_cast<NodeId>(rng.below(n));
            if (w == u || present.count(pack(u, w))) continue;
            present.erase(pack(u, v));
            present.insert(pack(u, w));
            v = w;
            rewired = true;
            break;
        }
        (void)rewired;  // node saturated against the whole graph: keep the lattice edge
    }
    return Graph(static_cast<NodeId>(n), std::move(edges));
}

Graph star_graph(unsigned leaves) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId l = 1; l <= leaves; ++l) edges.emplace_back(0, l);
    return Graph(leaves + 1, std::move(edges));
}

Graph kronecker(const Graph& initiator, unsigned power, std::size_t node_cap,
                std::size_t entry_cap) {
    const std::size_t b = initiator.node_count();
    if (b < 2 || b > 8) throw std::invalid_argument("kronecker: initiator must have 2..8 nodes");
    if (power < 1) throw std::invalid_argument("kronecker: power must be >= 1");

    // Node and entry counts of the power, computed before any allocation.
    // The initiator matrix is adjacency + identity, so nnz(B) = 2|E| + b.
    long double nodes_ld = 1, entries_ld = 1;
    const long double nnz_b = static_cast<long double>(2 * initiator.edge_count() + b);
    for (unsigned i = 0; i < power; ++i) {
        nodes_ld *= static_cast<long double>(b);
        entries_ld *= nnz_b;
    }
    if (nodes_ld > static_cast<long double>(node_cap))
        throw std::runtime_error("kronecker: node count " + std::to_string((double)nodes_ld) +
                                 " exceeds cap " + std::to_string(node_cap));
    if (entries_ld > static_cast<long double>(entry_cap))
        throw std::runtime_error("kronecker: entry count " + std::to_string((double)entries_ld) +
                                 " exceeds cap " + std::to_string(entry_cap));

    const std::size_t n = static_cast<std::size_t>(nodes_ld + 0.5);

    // Closed neighborhoods of the initiator (adjacency + identity rows).
    std::vector<std::vector<NodeId>> closed(b);
    for (NodeId u = 0; u < b; ++u) {
        closed[u].assign(initiator.neighbors(u).begin(), initiator.neighbors(u).end());
        closed[u].push_back(u);
        std::sort(closed[u].begin(), closed[u].end());
    }

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(entries_ld) / 2);

    std::vector<NodeId> digits(power), choice(power);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t x = i;
        for (unsigned d = 0; d < power; ++d) {
            digits[d] = static_cast<NodeId>(x % b);
            x /= b;
        }
        // Odometer over the Cartesian product of closed neighborhoods.
        std::fill(choice.begin(), choice.end(), 0);
        for (;;) {
            std::size_t j = 0;
            for (unsigned d = power; d-- > 0;) j = j * b + closed[digits[d]][choice[d]];
            if (j > i) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
            unsigned d = 0;
            while (d < power && choice[d] + 1 == closed[digits[d]].size()) {
                choice[d] = 0;
                ++d;
            }
            if (d == power) break;
            ++choice[d];
        }
    }
    return Graph(static_cast<NodeId>(n), std::move(edges));
}

ConfigurationResult configuration_model(std::span<const std::uint32_t> degree_sequence,
                                        std::uint64_t seed) {
    const std::size_t n = degree_sequence.size();
    if (n == 0) throw std::invalid_argument("configuration_model: empty degree sequence");
    std::uint64_t total = 0;
    for (std::uint32_t d : degree_sequence) {
        if (d >= n) throw std::invalid_argument("configuration_model: degree must be < n");
        total += d;
    }
    if (total % 2 != 0)
        throw std::invalid_argument("configuration_model: degree sum must be even");

    std::vector<NodeId> stubs;
    stubs.reserve(total);
    for (NodeId u = 0; u < n; ++u)
        for (std::uint32_t i = 0; i < degree_sequence[u]; ++i) stubs.push_back(u);

    Rng rng(seed);
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[rng.below(i)]);

    auto pack = [](NodeId a, NodeId b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    std::unordered_set<std::uint64_t> present;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::size_t discarded = 0;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        NodeId a = stubs[i], b = stubs[i + 1];
        if (a == b || present.count(pack(a, b))) {
            discarded += 2;
            continue;
        }
        present.insert(pack(a, b));
        edges.emplace_back(a, b);
    }
    ConfigurationResult res{Graph(static_cast<NodeId>(n), std::move(edges)), discarded};
    return res;
}

Graph generate(const GeneratorSpec& spec) {
    if (spec.kind == "barabasi_albert") {
        return barabasi_albert(spec.n, spec.m0, spec.attach, spec.seed);
    }
    if (spec.kind == "watts_strogatz") {
        return watts_strogatz(spec.n, spec.ring_degree, spec.beta, spec.seed);
    }
    if (spec.kind == "kronecker") {
        Graph init = spec.initiator == "star4" ? star_graph(3)
                                               : load_edge_list_file(spec.initiator);
        return kronecker(init, spec.power);
    }
    if (spec.kind == "configuration") {
        std::ifstream in(spec.degrees_file);
        if (!in)
            throw std::runtime_error("cannot open degree file: " + spec.degrees_file);
        std::vector<std::uint32_t> degs;
        std::uint32_t d;
        while (in >> d) degs.push_back(d);
        return configuration_model(degs, spec.seed).graph;
    }
    throw std::invalid_argument("unknown generator kind: " + spec.kind);
}

}  // namespace adaseed
