#include "adaseed/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace adaseed {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

void check_node_data(const Graph& g, std::span<const double> w, std::span<const double> p) {
    if (w.size() != g.node_count() || p.size() != g.node_count())
        throw std::invalid_argument("build_instance: weight/probability arrays must cover all nodes");
    for (double pu : p)
        if (!(pu >= 0.0 && pu <= 1.0))
            throw std::invalid_argument("build_instance: probabilities must lie in [0,1]");
    for (double wu : w)
        if (!(wu >= 0.0) || !std::isfinite(wu))
            throw std::invalid_argument("build_instance: weights must be finite and nonnegative");
}

}  // namespace

BipartiteInstance build_instance(const Graph& g, std::span<const NodeId> core,
                                 std::span<const double> node_weight,
                                 std::span<const double> node_prob,
                                 const BuildOptions& opts) {
    check_node_data(g, node_weight, node_prob);

    BipartiteInstance inst;
    inst.core.assign(core.begin(), core.end());
    std::sort(inst.core.begin(), inst.core.end());
    inst.core.erase(std::unique(inst.core.begin(), inst.core.end()), inst.core.end());
    for (NodeId v : inst.core)
        if (v >= g.node_count()) throw std::invalid_argument("build_instance: core id out of range");

    std::vector<char> is_core(g.node_count(), 0);
    for (NodeId v : inst.core) is_core[v] = 1;

    std::vector<char> seen(g.node_count(), 0);
    for (NodeId v : inst.core)
        for (NodeId u : g.neighbors(v)) {
            if (opts.exclude_core_from_neighbors && is_core[u]) continue;
            seen[u] = 1;
        }
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (seen[u]) inst.neighbors.push_back(u);

    std::vector<std::uint32_t> index_of(g.node_count(), kNone);
    for (std::uint32_t i = 0; i < inst.neighbors.size(); ++i) index_of[inst.neighbors[i]] = i;

    inst.weight.reserve(inst.neighbors.size());
    inst.prob.reserve(inst.neighbors.size());
    inst.neighbor_degree.reserve(inst.neighbors.size());
    for (NodeId u : inst.neighbors) {
        inst.weight.push_back(node_weight[u]);
        inst.prob.push_back(node_prob[u]);
        inst.neighbor_degree.push_back(g.degree(u));
    }
    inst.core_weight.reserve(inst.core.size());
    for (NodeId v : inst.core) inst.core_weight.push_back(node_weight[v]);

    inst.core_adj.resize(inst.core.size());
    inst.parents.resize(inst.neighbors.size());
    for (std::uint32_t ci = 0; ci < inst.core.size(); ++ci) {
        auto& lst = inst.core_adj[ci];
        for (NodeId u : g.neighbors(inst.core[ci])) {
            std::uint32_t ni = index_of[u];
            if (ni != kNone) lst.push_back(ni);
        }
        std::sort(lst.begin(), lst.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (inst.weight[a] != inst.weight[b]) return inst.weight[a] > inst.weight[b];
            return a < b;
        });
        for (std::uint32_t ni : lst) inst.parents[ni].push_back(ci);
    }
    for (auto& ps : inst.parents) std::sort(ps.begin(), ps.end());
    return inst;
}

ParadoxStats paradox_stats(const Graph& g, std::span<const NodeId> core) {
    std::vector<NodeId> cs(core.begin(), core.end());
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    if (cs.empty()) throw std::invalid_argument("paradox_stats: empty core");
    for (NodeId v : cs)
        if (v >= g.node_count()) throw std::invalid_argument("paradox_stats: core id out of range");

    std::vector<char> seen(g.node_count(), 0);
    std::vector<std::uint32_t> core_deg, nb_deg;
    core_deg.reserve(cs.size());
    for (NodeId v : cs) {
        core_deg.push_back(g.degree(v));
        for (NodeId u : g.neighbors(v)) seen[u] = 1;
    }
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (seen[u]) nb_deg.push_back(g.degree(u));

    auto make_cdf = [](std::vector<std::uint32_t>& deg) {
        std::vector<std::pair<std::uint32_t, double>> cdf;
        std::sort(deg.begin(), deg.end());
        for (std::size_t i = 0; i < deg.size(); ++i) {
            if (i + 1 < deg.size() && deg[i + 1] == deg[i]) continue;
            cdf.emplace_back(deg[i], static_cast<double>(i + 1) / static_cast<double>(deg.size()));
        }
        return cdf;
    };
    auto mean = [](const std::vector<std::uint32_t>& deg) {
        double s = 0;
        for (auto d : deg) s += d;
        return deg.empty() ? 0.0 : s / static_cast<double>(deg.size());
    };

    ParadoxStats st;
    st.mean_degree_core = mean(core_deg);
    st.mean_degree_neighbors = mean(nb_deg);
    st.core_cdf = make_cdf(core_deg);
    st.neighbor_cdf = make_cdf(nb_deg);
    return st;
}

namespace {

void print_double(std::ostream& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, ptr - buf);
}

double parse_double_tok(const std::string& tok, std::size_t lineno, const char* what) {
    double v;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(lineno, std::string("bad ") + what + " token '" + tok + "'");
    return v;
}

}  // namespace

void dump_instance(const BipartiteInstance& inst, std::ostream& out) {
    out << "#adaptive-seed-instance v1\n";
    for (std::uint32_t ci = 0; ci < inst.core_size(); ++ci)
        for (std::uint32_t ni : inst.core_adj[ci]) {
            out << inst.core[ci] << '\t' << inst.neighbors[ni] << '\t';
            print_double(out, inst.weight[ni]);
            out << '\t';
            print_double(out, inst.prob[ni]);
            out << '\n';
        }
}

void dump_instance_file(const BipartiteInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    dump_instance(inst, out);
}

BipartiteInstance restore_instance(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError(1, "empty instance file");
    ++lineno;
    if (line.rfind("#adaptive-seed-instance v1", 0) != 0)
        throw ParseError(1, "missing instance header");

    struct Inc {
        NodeId core, nb;
    };
    std::vector<Inc> incs;
    struct NbData {
        double w, p;
    };
    std::vector<std::pair<NodeId, NbData>> nbdata;

    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::istringstream ls(line);
        std::string t1, t2, t3, t4;
        ls >> t1 >> t2 >> t3 >> t4;
        if (t4.empty()) throw ParseError(lineno, "expected 4 tab separated fields");
        std::int64_t c, u;
        {
            auto r1 = std::from_chars(t1.data(), t1.data() + t1.size(), c);
            auto r2 = std::from_chars(t2.data(), t2.data() + t2.size(), u);
            if (r1.ec != std::errc() || r2.ec != std::errc() || c < 0 || u < 0)
                throw ParseError(lineno, "bad node id");
        }
        double w = parse_double_tok(t3, lineno, "weight");
        double p = parse_double_tok(t4, lineno, "probability");
        if (!(p >= 0.0 && p <= 1.0)) throw ParseError(lineno, "probability outside [0,1]");
        if (!(w >= 0.0)) throw ParseError(lineno, "negative weight");
        incs.push_back({static_cast<NodeId>(c), static_cast<NodeId>(u)});
        nbdata.emplace_back(static_cast<NodeId>(u), NbData{w, p});
    }
    if (incs.empty()) throw ParseError(lineno, "instance has no incidences");

    BipartiteInstance inst;
    for (const auto& ic : incs) inst.core.push_back(ic.core);
    std::sort(inst.core.begin(), inst.core.end());
    inst.core.erase(std::unique(inst.core.begin(), inst.core.end()), inst.core.end());

    for (const auto& [u, d] : nbdata) inst.neighbors.push_back(u);
    std::sort(inst.neighbors.begin(), inst.neighbors.end());
    inst.neighbors.erase(std::unique(inst.neighbors.begin(), inst.neighbors.end()),
                         inst.neighbors.end());

    inst.weight.assign(inst.neighbors.size(), -1.0);
    inst.prob.assign(inst.neighbors.size(), -1.0);
    auto nb_index = [&](NodeId u) {
        return static_cast<std::uint32_t>(
            std::lower_bound(inst.neighbors.begin(), inst.neighbors.end(), u) -
            inst.neighbors.begin());
    };
    for (const auto& [u, d] : nbdata) {
        std::uint32_t ni = nb_index(u);
        if (inst.weight[ni] < 0.0) {
            inst.weight[ni] = d.w;
            inst.prob[ni] = d.p;
        } else if (inst.weight[ni] != d.w || inst.prob[ni] != d.p) {
            throw std::runtime_error("restore_instance: conflicting data for neighbor " +
                                     std::to_string(u));
        }
    }

    inst.core_adj.resize(inst.core.size());
    inst.parents.resize(inst.neighbors.size());
    auto core_index = [&](NodeId v) {
        return static_cast<std::uint32_t>(
            std::lower_bound(inst.core.begin(), inst.core.end(), v) - inst.core.begin());
    };
    for (const auto& ic : incs) {
        std::uint32_t ci = core_index(ic.core);
        std::uint32_t ni = nb_index(ic.nb);
        inst.core_adj[ci].push_back(ni);
    }
    for (auto& lst : inst.core_adj) {
        std::sort(lst.begin(), lst.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (inst.weight[a] != inst.weight[b]) return inst.weight[a] > inst.weight[b];
            return a < b;
        });
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }
    for (std::uint32_t ci = 0; ci < inst.core_size(); ++ci)
        for (std::uint32_t ni : inst.core_adj[ci]) inst.parents[ni].push_back(ci);
    for (auto& ps : inst.parents) {
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    }
    return inst;
}

BipartiteInstance restore_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return restore_instance(in);
}

}  // namespace adaseed
