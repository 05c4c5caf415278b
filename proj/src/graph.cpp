#include "adaseed/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace adaseed {

Graph::Graph(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edges,
             std::vector<std::int64_t> original_ids) {
    if (!original_ids.empty() && original_ids.size() != node_count)
        throw std::invalid_argument("Graph: id map size does not match node count");

    for (auto& [a, b] : edges) {
        if (a >= node_count || b >= node_count)
            throw std::invalid_argument("Graph: edge endpoint out of range");
        if (a > b) std::swap(a, b);
    }
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
    for (const auto& [a, b] : edges) {
        ++offsets_[a + 1];
        ++offsets_[b + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];

    adj_.resize(edges.size() * 2);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
        adj_[cursor[a]++] = b;
        adj_[cursor[b]++] = a;
    }
    for (NodeId u = 0; u < node_count; ++u)
        std::sort(adj_.begin() + offsets_[u], adj_.begin() + offsets_[u + 1]);

    original_ids_ = std::move(original_ids);
}

namespace {

bool parse_int64(std::string_view tok, std::int64_t& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

Graph load_edge_list(std::istream& in) {
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;

        std::istringstream ls(line);
        std::string t1, t2, extra;
        ls >> t1 >> t2;
        if (t2.empty()) throw ParseError(lineno, "expected two integer tokens");
        if (ls >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
        std::int64_t a, b;
        if (!parse_int64(t1, a) || !parse_int64(t2, b))
            throw ParseError(lineno, "expected two integer tokens");
        raw.emplace_back(a, b);
    }
    if (raw.empty()) throw ParseError(lineno, "no edges in input");

    std::vector<std::int64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& [a, b] : raw) {
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    auto compact = [&](std::int64_t id) {
        return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(raw.size());
    for (const auto& [a, b] : raw) edges.emplace_back(compact(a), compact(b));

    const NodeId n = static_cast<NodeId>(ids.size());
    return Graph(n, std::move(edges), std::move(ids));
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return load_edge_list(in);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    out << "# undirected edge list, one edge per line\n";
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.neighbors(u))
            if (u < v) out << g.original_id(u) << '\t' << g.original_id(v) << '\n';
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    save_edge_list(g, out);
}

}  // namespace adaseed
