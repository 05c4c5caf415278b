#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adaseed/graph.hpp"
#include "adaseed/instance.hpp"

namespace adaseed {

// Additive influence weights over all graph nodes.

// w_u = deg(u).
std::vector<double> degree_weights(const Graph& g);

// Voter model horizon weights: w(0) = 1, w(t+1)[u] = sum over neighbors v of
// w(t)[v] / deg(v). Computed by repeated sparse products, never by powering
// the walk matrix. Isolated nodes keep their weight (a node with no
// neighbors retains its own opinion). Total mass sum_u w_u == n for all t.
std::vector<double> voter_weights(const Graph& g, unsigned steps);

enum class ProbFamily { uniform, beta, normal, power_law, inverse_degree };

ProbFamily prob_family_from_string(const std::string& s);
std::string to_string(ProbFamily f);

struct ProbabilityModel {
    ProbFamily family = ProbFamily::uniform;
    double mean = 1.0;
    std::uint64_t seed = 1;
    // Family shape constants. beta keeps its second parameter fixed and
    // solves the first for the mean; normal keeps sigma fixed and clips;
    // power_law draws Pareto(xmin, exponent) truncated to [0,1] and rescales
    // to the mean; inverse_degree sets p_u = c / deg(u) with c solved so the
    // clipped mean matches.
    double beta_b = 5.0;
    double normal_sigma = 0.01;
    double power_exponent = 2.5;
    double power_xmin = 0.01;
};

// Fills inst.prob for every neighbor. inverse_degree requires
// inst.neighbor_degree (absent on restored instances) and errors without it.
void assign_probabilities(BipartiteInstance& inst, const ProbabilityModel& model);

// One random realization of the neighbor side restricted to N(S):
// each neighbor of S independently appears with its probability.
// S holds core indices. Returns neighbor indices, ascending.
std::vector<std::uint32_t> sample_realization(const BipartiteInstance& inst,
                                              std::span<const std::uint32_t> S,
                                              std::uint64_t seed);

// Rounds a fractional second stage against a realization: each realized
// neighbor u is kept with probability q[u]; if more than floor(budget)
// survive, the top floor(budget) by (weight desc, index asc) are kept.
// Returns neighbor indices, ascending.
std::vector<std::uint32_t> select_feasible(const BipartiteInstance& inst,
                                           std::span<const std::uint32_t> realized,
                                           std::span<const double> q, double budget,
                                           std::uint64_t seed);

}  // namespace adaseed
