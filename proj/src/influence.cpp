#include "adaseed/influence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "adaseed/rng.hpp"

namespace adaseed {

std::vector<double> degree_weights(const Graph& g) {
    std::vector<double> w(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) w[u] = g.degree(u);
    return w;
}

std::vector<double> voter_weights(const Graph& g, unsigned steps) {
    const std::size_t n = g.node_count();
    std::vector<double> w(n, 1.0), next(n);
    std::vector<double> inv_deg(n, 0.0);
    for (NodeId u = 0; u < n; ++u)
        if (g.degree(u) > 0) inv_deg[u] = 1.0 / g.degree(u);

    for (unsigned s = 0; s < steps; ++s) {
        for (NodeId u = 0; u < n; ++u) {
            if (g.degree(u) == 0) {
                next[u] = w[u];
                continue;
            }
            double acc = 0.0;
            for (NodeId v : g.neighbors(u)) acc += w[v] * inv_deg[v];
            next[u] = acc;
        }
        w.swap(next);
    }
    return w;
}

ProbFamily prob_family_from_string(const std::string& s) {
    if (s == "uniform") return ProbFamily::uniform;
    if (s == "beta") return ProbFamily::beta;
    if (s == "normal") return ProbFamily::normal;
    if (s == "power_law") return ProbFamily::power_law;
    if (s == "inverse_degree") return ProbFamily::inverse_degree;
    throw std::invalid_argument("unknown probability family: " + s);
}

std::string to_string(ProbFamily f) {
    switch (f) {
        case ProbFamily::uniform: return "uniform";
        case ProbFamily::beta: return "beta";
        case ProbFamily::normal: return "normal";
        case ProbFamily::power_law: return "power_law";
        case ProbFamily::inverse_degree: return "inverse_degree";
    }
    return "?";
}

namespace {

double clip01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Smallest c in [0, hi] with mean(f(c)) >= target, f monotone nondecreasing.
template <typename F>
double bisect_scale(F mean_at, double hi, double target) {
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mean_at(mid) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

void assign_probabilities(BipartiteInstance& inst, const ProbabilityModel& model) {
    const std::size_t n = inst.neighbor_count();
    inst.prob.assign(n, 0.0);
    if (n == 0) return;
    const double mean = model.mean;

    switch (model.family) {
        case ProbFamily::uniform: {
            if (!(mean >= 0.0 && mean <= 1.0))
                throw std::invalid_argument("uniform family needs mean in [0,1]");
            std::fill(inst.prob.begin(), inst.prob.end(), mean);
            return;
        }
        case ProbFamily::beta: {
            if (!(mean > 0.0 && mean < 1.0))
                throw std::invalid_argument("beta family needs mean in (0,1)");
            const double a = model.beta_b * mean / (1.0 - mean);
            Rng rng(model.seed);
            for (std::size_t i = 0; i < n; ++i) inst.prob[i] = clip01(rng.beta(a, model.beta_b));
            return;
        }
        case ProbFamily::normal: {
            if (!(mean >= 0.0 && mean <= 1.0))
                throw std::invalid_argument("normal family needs mean in [0,1]");
            Rng rng(model.seed);
            for (std::size_t i = 0; i < n; ++i)
                inst.prob[i] = clip01(rng.normal(mean, model.normal_sigma));
            return;
        }
        case ProbFamily::power_law: {
            if (!(mean > 0.0 && mean <= 1.0))
                throw std::invalid_argument("power_law family needs mean in (0,1]");
            Rng rng(model.seed);
            std::vector<double> raw(n);
            for (std::size_t i = 0; i < n; ++i)
                raw[i] = std::min(1.0, rng.pareto(model.power_xmin, model.power_exponent));
            auto mean_at = [&](double c) {
                double s = 0.0;
                for (double x : raw) s += std::min(1.0, c * x);
                return s / static_cast<double>(n);
            };
            double c = bisect_scale(mean_at, 1.0 / model.power_xmin + 1.0, mean);
            for (std::size_t i = 0; i < n; ++i) inst.prob[i] = std::min(1.0, c * raw[i]);
            return;
        }
        case ProbFamily::inverse_degree: {
            if (!(mean > 0.0 && mean <= 1.0))
                throw std::invalid_argument("inverse_degree family needs mean in (0,1]");
            if (inst.neighbor_degree.size() != n)
                throw std::runtime_error(
                    "inverse_degree family needs source graph degrees, absent on restored instances");
            double max_deg = 1.0;
            for (auto d : inst.neighbor_degree) max_deg = std::max(max_deg, double(d));
            auto mean_at = [&](double c) {
                double s = 0.0;
                for (auto d : inst.neighbor_degree) s += std::min(1.0, c / std::max(1u, d));
                return s / static_cast<double>(n);
            };
            double c = bisect_scale(mean_at, max_deg, mean);
            for (std::size_t i = 0; i < n; ++i)
                inst.prob[i] = std::min(1.0, c / std::max(1u, inst.neighbor_degree[i]));
            return;
        }
    }
    throw std::logic_error("unreachable probability family");
}

std::vector<std::uint32_t> sample_realization(const BipartiteInstance& inst,
                                              std::span<const std::uint32_t> S,
                                              std::uint64_t seed) {
    std::vector<char> in_ns(inst.neighbor_count(), 0);
    for (std::uint32_t ci : S) {
        if (ci >= inst.core_size())
            throw std::invalid_argument("sample_realization: core index out of range");
        for (std::uint32_t ni : inst.core_adj[ci]) in_ns[ni] = 1;
    }
    Rng rng(seed);
    std::vector<std::uint32_t> out;
    for (std::uint32_t ni = 0; ni < inst.neighbor_count(); ++ni)
        if (in_ns[ni] && rng.bernoulli(inst.prob[ni])) out.push_back(ni);
    return out;
}

std::vector<std::uint32_t> select_feasible(const BipartiteInstance& inst,
                                           std::span<const std::uint32_t> realized,
                                           std::span<const double> q, double budget,
                                           std::uint64_t seed) {
    if (q.size() != inst.neighbor_count())
        throw std::invalid_argument("select_feasible: q must cover all neighbors");
    if (budget < 0.0) throw std::invalid_argument("select_feasible: negative budget");

    Rng rng(seed);
    std::vector<std::uint32_t> kept;
    for (std::uint32_t ni : realized)
        if (rng.bernoulli(q[ni])) kept.push_back(ni);

    const std::size_t cap = static_cast<std::size_t>(std::floor(budget));
    if (kept.size() > cap) {
        std::sort(kept.begin(), kept.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (inst.weight[a] != inst.weight[b]) return inst.weight[a] > inst.weight[b];
            return a < b;
        });
        kept.resize(cap);
        std::sort(kept.begin(), kept.end());
    }
    return kept;
}

}  // namespace adaseed
