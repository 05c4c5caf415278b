#include "adaseed/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace adaseed {

SeedingLP build_lp(const BipartiteInstance& inst, double k) {
    if (k < 0.0) throw std::invalid_argument("build_lp: negative budget");
    SeedingLP lp;
    lp.num_core = inst.core_size();
    lp.num_neighbors = inst.neighbor_count();
    lp.budget = k;
    lp.prob = inst.prob;
    lp.gain.resize(inst.neighbor_count());
    for (std::size_t u = 0; u < inst.neighbor_count(); ++u)
        lp.gain[u] = inst.prob[u] * inst.weight[u];
    lp.parents = inst.parents;
    return lp;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Col {
    std::vector<std::pair<std::uint32_t, double>> entries;  // (row, coeff)
};

enum class St : std::uint8_t { basic, lower, upper };

struct Tableau {
    std::size_t nrows = 0, nstruct = 0, ncols = 0;
    std::vector<Col> cols;       // structural then slack
    std::vector<double> c, ub, b;
};

Tableau assemble(const SeedingLP& lp) {
    const std::size_t m = lp.num_core, n = lp.num_neighbors;
    Tableau t;
    t.nrows = 1 + n;
    t.nstruct = m + n;
    t.ncols = t.nstruct + t.nrows;
    t.cols.resize(t.ncols);
    t.c.assign(t.ncols, 0.0);
    t.ub.assign(t.ncols, kInf);
    t.b.assign(t.nrows, 0.0);
    t.b[0] = lp.budget;

    for (std::size_t v = 0; v < m; ++v) {
        t.cols[v].entries.emplace_back(0, 1.0);
        t.ub[v] = 1.0;
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::uint32_t v : lp.parents[u])
            t.cols[v].entries.emplace_back(static_cast<std::uint32_t>(1 + u), -1.0);
    for (std::size_t u = 0; u < n; ++u) {
        std::size_t j = m + u;
        t.cols[j].entries.emplace_back(0, lp.prob[u]);
        t.cols[j].entries.emplace_back(static_cast<std::uint32_t>(1 + u), 1.0);
        t.ub[j] = 1.0;
        t.c[j] = lp.gain[u];
    }
    for (std::size_t r = 0; r < t.nrows; ++r)
        t.cols[t.nstruct + r].entries.emplace_back(static_cast<std::uint32_t>(r), 1.0);
    return t;
}

struct SimplexState {
    const Tableau& tb;
    std::vector<St> status;
    std::vector<std::uint32_t> basis;   // row -> col
    std::vector<double> binv;           // dense nrows x nrows, row major
    std::vector<double> xb;             // basic values by row
    std::vector<double> d;              // reduced costs, all cols

    explicit SimplexState(const Tableau& t) : tb(t) {
        status.assign(t.ncols, St::lower);
        basis.resize(t.nrows);
        for (std::size_t r = 0; r < t.nrows; ++r) {
            basis[r] = static_cast<std::uint32_t>(t.nstruct + r);
            status[t.nstruct + r] = St::basic;
        }
        binv.assign(t.nrows * t.nrows, 0.0);
        for (std::size_t r = 0; r < t.nrows; ++r) binv[r * t.nrows + r] = 1.0;
        xb = t.b;
        d = t.c;
    }

    double* binv_row(std::size_t r) { return binv.data() + r * tb.nrows; }

    double nonbasic_value(std::size_t j) const {
        return status[j] == St::upper ? tb.ub[j] : 0.0;
    }

    // Fresh reduced costs and basic values; clears accumulated drift.
    void refresh() {
        const std::size_t R = tb.nrows;
        std::vector<double> y(R, 0.0);
        for (std::size_t r = 0; r < R; ++r) {
            double cb = tb.c[basis[r]];
            if (cb == 0.0) continue;
            const double* row = binv.data() + r * R;
            for (std::size_t i = 0; i < R; ++i) y[i] += cb * row[i];
        }
        for (std::size_t j = 0; j < tb.ncols; ++j) {
            if (status[j] == St::basic) {
                d[j] = 0.0;
                continue;
            }
            double acc = tb.c[j];
            for (auto [r, v] : tb.cols[j].entries) acc -= y[r] * v;
            d[j] = acc;
        }
        std::vector<double> rhs = tb.b;
        for (std::size_t j = 0; j < tb.ncols; ++j) {
            if (status[j] != St::upper) continue;
            for (auto [r, v] : tb.cols[j].entries) rhs[r] -= v * tb.ub[j];
        }
        for (std::size_t r = 0; r < R; ++r) {
            const double* row = binv.data() + r * R;
            double acc = 0.0;
            for (std::size_t i = 0; i < R; ++i) acc += row[i] * rhs[i];
            xb[r] = acc;
        }
    }

    void extract(std::vector<double>& x) const {
        x.assign(tb.ncols, 0.0);
        for (std::size_t j = 0; j < tb.ncols; ++j)
            if (status[j] != St::basic) x[j] = nonbasic_value(j);
        for (std::size_t r = 0; r < tb.nrows; ++r) x[basis[r]] = xb[r];
    }
};

FractionalSolution extract_solution(const SeedingLP& lp, const SimplexState& st,
                                    std::size_t iterations) {
    std::vector<double> x;
    st.extract(x);
    FractionalSolution out;
    out.lambda.resize(lp.num_core);
    out.q.resize(lp.num_neighbors);
    for (std::size_t v = 0; v < lp.num_core; ++v)
        out.lambda[v] = std::clamp(x[v], 0.0, 1.0);
    for (std::size_t u = 0; u < lp.num_neighbors; ++u)
        out.q[u] = std::clamp(x[lp.num_core + u], 0.0, 1.0);
    out.objective = 0.0;
    for (std::size_t u = 0; u < lp.num_neighbors; ++u)
        out.objective += lp.gain[u] * out.q[u];
    out.iterations = iterations;
    return out;
}

}  // namespace

FractionalSolution solve_lp(const SeedingLP& lp, const LpOptions& opts) {
    const Tableau tb = assemble(lp);
    SimplexState st(tb);
    const std::size_t R = tb.nrows;
    const double tol = opts.tol;
    const std::size_t max_iter =
        opts.max_iterations > 0 ? opts.max_iterations : 2000 + 60 * (R + tb.nstruct);

    bool bland = false;
    std::size_t stall = 0;
    std::vector<double> w(R);
    std::vector<double> beta(R);

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        if (iter % 256 == 0) st.refresh();

        // Pricing.
        std::size_t enter = tb.ncols;
        double best = tol;
        for (std::size_t j = 0; j < tb.ncols; ++j) {
            if (st.status[j] == St::basic) continue;
            double dj = st.d[j];
            double score = st.status[j] == St::lower ? dj : -dj;
            if (score <= tol) continue;
            if (bland) {
                enter = j;
                break;
            }
            if (score > best) {
                best = score;
                enter = j;
            }
        }
        if (enter == tb.ncols) {
            st.refresh();
            return extract_solution(lp, st, iter - 1);
        }

        const double sigma = st.status[enter] == St::lower ? 1.0 : -1.0;

        // FTRAN.
        std::fill(w.begin(), w.end(), 0.0);
        for (auto [row, val] : tb.cols[enter].entries) {
            if (val == 0.0) continue;
            for (std::size_t r = 0; r < R; ++r) w[r] += st.binv[r * R + row] * val;
        }

        // Ratio test. x_j moves by sigma * delta, basics by -sigma * w * delta.
        double delta = tb.ub[enter];  // bound flip distance (inf for slacks)
        std::size_t leave = R;
        double leave_pivot = 0.0;
        for (std::size_t r = 0; r < R; ++r) {
            double g = sigma * w[r];
            double cand;
            if (g > 1e-9) {
                cand = st.xb[r] / g;
            } else if (g < -1e-9) {
                double ub = tb.ub[st.basis[r]];
                if (ub == kInf) continue;
                cand = (ub - st.xb[r]) / (-g);
            } else {
                continue;
            }
            if (cand < 0.0) cand = 0.0;
            if (cand < delta - 1e-12 ||
                (cand < delta + 1e-12 &&
                 (leave == R || std::abs(g) > std::abs(leave_pivot)))) {
                delta = cand;
                leave = r;
                leave_pivot = sigma * w[r];
            }
        }
        if (leave == R && delta == kInf)
            throw std::runtime_error("solve_lp: unbounded direction (malformed input)");

        const double gain = std::abs(st.d[enter]) * delta;
        if (gain > 1e-12) {
            stall = 0;
            bland = false;
        } else if (++stall > 64) {
            bland = true;
        }

        if (leave == R) {
            // Bound flip: entering variable crosses to its other bound.
            for (std::size_t r = 0; r < R; ++r) st.xb[r] -= sigma * w[r] * delta;
            st.status[enter] = st.status[enter] == St::lower ? St::upper : St::lower;
            continue;
        }

        // Pivot: update xb, statuses, reduced costs, then the inverse.
        const double enter_val = st.nonbasic_value(enter) + sigma * delta;
        for (std::size_t r = 0; r < R; ++r) st.xb[r] -= sigma * w[r] * delta;
        const std::uint32_t leaving_col = st.basis[leave];
        st.status[leaving_col] = sigma * w[leave] > 0.0 ? St::lower : St::upper;
        st.basis[leave] = static_cast<std::uint32_t>(enter);
        st.status[enter] = St::basic;
        st.xb[leave] = enter_val;

        std::copy(st.binv_row(leave), st.binv_row(leave) + R, beta.begin());
        const double alpha_e = w[leave];
        const double de = st.d[enter];
        if (de != 0.0) {
            // d_j -= (d_e / alpha_e) * (row `leave` of Binv) . A_j
            const double f = de / alpha_e;
            for (std::size_t j = 0; j < tb.nstruct; ++j) {
                if (st.status[j] == St::basic) continue;
                double a = 0.0;
                for (auto [row, val] : tb.cols[j].entries) a += beta[row] * val;
                if (a != 0.0) st.d[j] -= f * a;
            }
            for (std::size_t r = 0; r < R; ++r) {
                std::size_t j = tb.nstruct + r;
                if (st.status[j] == St::basic) continue;
                if (beta[r] != 0.0) st.d[j] -= f * beta[r];
            }
        }
        st.d[enter] = 0.0;
        st.d[leaving_col] = -de / alpha_e;

        // Binv <- E * Binv with E the elementary pivot matrix.
        double* prow = st.binv_row(leave);
        const double inv_pivot = 1.0 / alpha_e;
        for (std::size_t i = 0; i < R; ++i) prow[i] *= inv_pivot;
        for (std::size_t r = 0; r < R; ++r) {
            if (r == leave) continue;
            double factor = w[r];
            if (factor == 0.0) continue;
            double* row = st.binv_row(r);
            for (std::size_t i = 0; i < R; ++i) row[i] -= factor * prow[i];
        }
    }

    st.refresh();
    throw LpIterationLimit(extract_solution(lp, st, max_iter));
}

double max_violation(const SeedingLP& lp, const std::vector<double>& lambda,
                     const std::vector<double>& q) {
    if (lambda.size() != lp.num_core || q.size() != lp.num_neighbors)
        throw std::invalid_argument("max_violation: dimension mismatch");
    double viol = 0.0;
    double budget_use = 0.0;
    for (double lv : lambda) {
        budget_use += lv;
        viol = std::max({viol, -lv, lv - 1.0});
    }
    for (std::size_t u = 0; u < lp.num_neighbors; ++u) {
        budget_use += lp.prob[u] * q[u];
        viol = std::max({viol, -q[u], q[u] - 1.0});
        double cover = 0.0;
        for (std::uint32_t v : lp.parents[u]) cover += lambda[v];
        viol = std::max(viol, q[u] - cover);
    }
    viol = std::max(viol, budget_use - lp.budget);
    return viol;
}

void dump_lp(const SeedingLP& lp, std::ostream& out) {
    const std::size_t m = lp.num_core, n = lp.num_neighbors;
    out << "#adaptive-seed-lp v1\n";
    out << "rows " << (1 + n) << " cols " << (m + n) << " maximize\n";
    for (std::size_t u = 0; u < n; ++u)
        if (lp.gain[u] != 0.0) out << "c " << (m + u) << ' ' << lp.gain[u] << '\n';
    for (std::size_t v = 0; v < m; ++v) out << "a 0 " << v << " 1\n";
    for (std::size_t u = 0; u < n; ++u)
        if (lp.prob[u] != 0.0) out << "a 0 " << (m + u) << ' ' << lp.prob[u] << '\n';
    for (std::size_t u = 0; u < n; ++u) {
        for (std::uint32_t v : lp.parents[u]) out << "a " << (1 + u) << ' ' << v << " -1\n";
        out << "a " << (1 + u) << ' ' << (m + u) << " 1\n";
    }
    out << "b 0 " << lp.budget << '\n';
    for (std::size_t u = 0; u < n; ++u) out << "b " << (1 + u) << " 0\n";
    for (std::size_t j = 0; j < m + n; ++j) out << "u " << j << " 1\n";
}

SeedingSolution pipage_round(const BipartiteInstance& inst, const SeedingLP& lp,
                             const FractionalSolution& frac) {
    if (lp.num_core != inst.core_size() || lp.num_neighbors != inst.neighbor_count())
        throw std::invalid_argument("pipage_round: instance/LP mismatch");
    const std::size_t m = lp.num_core;
    constexpr double eps = 1e-9;

    std::vector<double> lambda(m);
    for (std::size_t v = 0; v < m; ++v) {
        double lv = std::clamp(frac.lambda[v], 0.0, 1.0);
        if (lv < eps) lv = 0.0;
        if (lv > 1.0 - eps) lv = 1.0;
        lambda[v] = lv;
    }

    // Coverage universe: neighbors the fractional solution actually uses.
    struct U {
        std::uint32_t u;
        double omega;
    };
    std::vector<U> universe;
    for (std::size_t u = 0; u < lp.num_neighbors; ++u) {
        double omega = lp.gain[u] * frac.q[u];
        if (omega > 0.0) universe.push_back({static_cast<std::uint32_t>(u), omega});
    }
    std::vector<std::vector<std::uint32_t>> touched(m);  // core -> universe positions
    for (std::uint32_t pos = 0; pos < universe.size(); ++pos)
        for (std::uint32_t v : lp.parents[universe[pos].u]) touched[v].push_back(pos);

    auto phi_terms = [&](const std::vector<std::uint32_t>& positions,
                         const std::vector<double>& lam) {
        double acc = 0.0;
        for (std::uint32_t pos : positions) {
            double prod = 1.0;
            for (std::uint32_t v : lp.parents[universe[pos].u]) prod *= 1.0 - lam[v];
            acc += universe[pos].omega * (1.0 - prod);
        }
        return acc;
    };

    std::vector<std::uint32_t> fractional;
    for (std::uint32_t v = 0; v < m; ++v)
        if (lambda[v] > 0.0 && lambda[v] < 1.0) fractional.push_back(v);

    while (fractional.size() >= 2) {
        std::uint32_t v1 = fractional[0], v2 = fractional[1];
        std::vector<std::uint32_t> affected;
        affected.reserve(touched[v1].size() + touched[v2].size());
        affected.insert(affected.end(), touched[v1].begin(), touched[v1].end());
        affected.insert(affected.end(), touched[v2].begin(), touched[v2].end());
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

        const double da = std::min(1.0 - lambda[v1], lambda[v2]);  // raise v1, lower v2
        const double db = std::min(lambda[v1], 1.0 - lambda[v2]);  // lower v1, raise v2

        std::vector<double> lam_a = lambda, lam_b = lambda;
        lam_a[v1] += da;
        lam_a[v2] -= da;
        lam_b[v1] -= db;
        lam_b[v2] += db;

        const double phi_a = phi_terms(affected, lam_a);
        const double phi_b = phi_terms(affected, lam_b);
        lambda = phi_a >= phi_b ? lam_a : lam_b;

        for (std::uint32_t v : {v1, v2}) {
            if (lambda[v] < eps) lambda[v] = 0.0;
            if (lambda[v] > 1.0 - eps) lambda[v] = 1.0;
        }
        std::vector<std::uint32_t> next;
        for (std::uint32_t v : fractional)
            if (lambda[v] > 0.0 && lambda[v] < 1.0) next.push_back(v);
        fractional.swap(next);
    }

    std::vector<std::uint32_t> s_floor;
    for (std::uint32_t v = 0; v < m; ++v)
        if (lambda[v] == 1.0) s_floor.push_back(v);

    const std::vector<SortedItemList> cores = core_item_lists(inst);
    auto evaluate = [&](const std::vector<std::uint32_t>& s) {
        SortedItemList cur;
        for (std::uint32_t ci : s) cur = merge_union(cur, cores[ci]);
        double budget2 = lp.budget - static_cast<double>(s.size());
        if (budget2 < 0.0) budget2 = 0.0;
        return std::make_pair(solve(cur, budget2), budget2);
    };

    auto [v_floor, t_floor] = evaluate(s_floor);
    std::vector<std::uint32_t> s_best = s_floor;
    double best_value = v_floor;
    std::vector<std::pair<unsigned, double>> tried{
        {static_cast<unsigned>(t_floor), v_floor}};

    if (!fractional.empty() && s_floor.size() + 1 <= lp.budget + eps) {
        std::vector<std::uint32_t> s_ceil = s_floor;
        s_ceil.push_back(fractional[0]);
        std::sort(s_ceil.begin(), s_ceil.end());
        auto [v_ceil, t_ceil] = evaluate(s_ceil);
        tried.emplace_back(static_cast<unsigned>(t_ceil), v_ceil);
        if (v_ceil > best_value) {
            best_value = v_ceil;
            s_best = std::move(s_ceil);
        }
    }

    SortedItemList cur;
    for (std::uint32_t ci : s_best) cur = merge_union(cur, cores[ci]);
    double budget2 = lp.budget - static_cast<double>(s_best.size());
    if (budget2 < 0.0) budget2 = 0.0;
    Allocation alloc = solve_with_allocation(cur, budget2);

    SeedingSolution sol;
    std::sort(s_best.begin(), s_best.end());
    sol.first_stage = std::move(s_best);
    sol.second_stage_budget = budget2;
    sol.allocation = std::move(alloc.q);
    sol.value = alloc.value;
    sol.split_values = std::move(tried);
    return sol;
}

}  // namespace adaseed
