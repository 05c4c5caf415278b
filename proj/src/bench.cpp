#include "adaseed/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "adaseed/evaluation.hpp"
#include "adaseed/graph.hpp"
#include "adaseed/greedy.hpp"
#include "adaseed/instance.hpp"
#include "adaseed/lp.hpp"
#include "adaseed/rng.hpp"

namespace adaseed {

unsigned BudgetSpec::resolve(std::size_t core_size) const {
    double k = fraction_of_core ? std::round(amount * static_cast<double>(core_size)) : amount;
    if (!(k >= 1.0) || k != std::floor(k))
        throw std::runtime_error("budget resolves to a non-positive or fractional k");
    return static_cast<unsigned>(k);
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw std::runtime_error("config: boolean expected for " + key);
}

double parse_num(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw std::runtime_error("config: number expected for " + key + ", got '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw std::runtime_error("config: integer expected for " + key + ", got '" + v + "'");
    return out;
}

BudgetSpec parse_budget(const std::string& v) {
    BudgetSpec b;
    std::string s = v;
    if (!s.empty() && s.back() == 'm') {
        b.fraction_of_core = true;
        s.pop_back();
    }
    b.amount = parse_num(s, "budget");
    return b;
}

const std::set<std::string> kKnownAlgos = {"greedy", "greedy-geo", "snp",       "lp",
                                           "rn",     "im",         "rf",        "saa-greedy"};

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    bool have_gen = false;
    GeneratorSpec gen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto eq = line.find('=');
        std::string key, val;
        if (eq != std::string::npos) {
            key = line.substr(0, eq);
            val = line.substr(eq + 1);
        } else {
            key = line;
        }
        auto trim = [](std::string& s) {
            std::size_t a = s.find_first_not_of(" \t\r");
            std::size_t b = s.find_last_not_of(" \t\r");
            s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
        };
        trim(key);
        trim(val);
        if (key.empty()) continue;
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": missing '='");

        if (key == "experiment") cfg.experiment = val;
        else if (key == "graph") cfg.graph_file = val;
        else if (key == "gen.kind") { gen.kind = val; have_gen = true; }
        else if (key == "gen.seed") { gen.seed = parse_u64(val, key); have_gen = true; }
        else if (key == "gen.n") { gen.n = static_cast<std::size_t>(parse_u64(val, key)); have_gen = true; }
        else if (key == "gen.m0") { gen.m0 = static_cast<std::size_t>(parse_u64(val, key)); have_gen = true; }
        else if (key == "gen.attach") { gen.attach = static_cast<std::size_t>(parse_u64(val, key)); have_gen = true; }
        else if (key == "gen.ring_degree") { gen.ring_degree = static_cast<std::size_t>(parse_u64(val, key)); have_gen = true; }
        else if (key == "gen.beta") { gen.beta = parse_num(val, key); have_gen = true; }
        else if (key == "gen.power") { gen.power = static_cast<unsigned>(parse_u64(val, key)); have_gen = true; }
        else if (key == "gen.initiator") { gen.initiator = val; have_gen = true; }
        else if (key == "gen.degrees_file") { gen.degrees_file = val; have_gen = true; }
        else if (key == "core.file") cfg.core_file = val;
        else if (key == "core.fraction") cfg.core_fraction = parse_num(val, key);
        else if (key == "core.seed") cfg.core_seed = parse_u64(val, key);
        else if (key == "core.resample") cfg.core_resample = parse_bool(val, key);
        else if (key == "exclude_core_from_neighbors") cfg.exclude_core_from_neighbors = parse_bool(val, key);
        else if (key == "weights") cfg.weights = val;
        else if (key == "voter.steps") cfg.voter_steps = static_cast<unsigned>(parse_u64(val, key));
        else if (key == "prob.family") cfg.prob.family = prob_family_from_string(val);
        else if (key == "prob.mean") cfg.prob.mean = parse_num(val, key);
        else if (key == "prob.seed") cfg.prob.seed = parse_u64(val, key);
        else if (key == "prob.sigma") cfg.prob.normal_sigma = parse_num(val, key);
        else if (key == "prob.exponent") cfg.prob.power_exponent = parse_num(val, key);
        else if (key == "prob.xmin") cfg.prob.power_xmin = parse_num(val, key);
        else if (key == "prob.beta_b") cfg.prob.beta_b = parse_num(val, key);
        else if (key == "budget") cfg.budgets.push_back(parse_budget(val));
        else if (key == "algo") {
            if (!kKnownAlgos.count(val)) throw std::runtime_error("config: unknown algo '" + val + "'");
            cfg.algos.push_back(val);
        }
        else if (key == "geo.epsilon") cfg.geo_epsilon = parse_num(val, key);
        else if (key == "snp.epsilon") cfg.snp_epsilon = parse_num(val, key);
        else if (key == "snp.sample") cfg.snp_sample = static_cast<std::size_t>(parse_u64(val, key));
        else if (key == "snp.seed") cfg.snp_seed = parse_u64(val, key);
        else if (key == "saa.samples") cfg.saa_samples = static_cast<std::size_t>(parse_u64(val, key));
        else if (key == "saa.seed") cfg.saa_seed = parse_u64(val, key);
        else if (key == "eval") {
            if (val != "exact" && val != "mc" && val != "none")
                throw std::runtime_error("config: eval must be exact, mc or none");
            cfg.eval = val;
        }
        else if (key == "eval.samples") cfg.eval_samples = static_cast<std::size_t>(parse_u64(val, key));
        else if (key == "eval.seed") cfg.eval_seed = parse_u64(val, key);
        else if (key == "repetitions") cfg.repetitions = static_cast<unsigned>(parse_u64(val, key));
        else if (key == "workers") cfg.workers = static_cast<unsigned>(parse_u64(val, key));
        else if (key == "timing") cfg.timing = parse_bool(val, key);
        else if (key == "seed") cfg.seed = parse_u64(val, key);
        else if (key == "plot.logy") cfg.plot_logy = parse_bool(val, key);
        else if (key == "scale.fraction") cfg.scale_fractions.push_back(parse_num(val, key));
        else throw std::runtime_error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (have_gen) cfg.generator = gen;
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in);
}

void serialize_config(const ExperimentConfig& cfg, std::ostream& out) {
    out << "experiment = " << cfg.experiment << '\n';
    if (!cfg.graph_file.empty()) out << "graph = " << cfg.graph_file << '\n';
    if (cfg.generator) {
        const GeneratorSpec& g = *cfg.generator;
        out << "gen.kind = " << g.kind << '\n';
        out << "gen.seed = " << g.seed << '\n';
        if (g.kind == "barabasi_albert")
            out << "gen.n = " << g.n << "\ngen.m0 = " << g.m0 << "\ngen.attach = " << g.attach << '\n';
        if (g.kind == "watts_strogatz")
            out << "gen.n = " << g.n << "\ngen.ring_degree = " << g.ring_degree
                << "\ngen.beta = " << fmt_double(g.beta) << '\n';
        if (g.kind == "kronecker")
            out << "gen.power = " << g.power << "\ngen.initiator = " << g.initiator << '\n';
        if (g.kind == "configuration") out << "gen.degrees_file = " << g.degrees_file << '\n';
    }
    if (!cfg.core_file.empty()) out << "core.file = " << cfg.core_file << '\n';
    if (cfg.core_fraction > 0) out << "core.fraction = " << fmt_double(cfg.core_fraction) << '\n';
    out << "core.seed = " << cfg.core_seed << '\n';
    out << "core.resample = " << (cfg.core_resample ? "true" : "false") << '\n';
    out << "exclude_core_from_neighbors = " << (cfg.exclude_core_from_neighbors ? "true" : "false") << '\n';
    out << "weights = " << cfg.weights << '\n';
    if (cfg.weights == "voter") out << "voter.steps = " << cfg.voter_steps << '\n';
    out << "prob.family = " << to_string(cfg.prob.family) << '\n';
    out << "prob.mean = " << fmt_double(cfg.prob.mean) << '\n';
    out << "prob.seed = " << cfg.prob.seed << '\n';
    for (const BudgetSpec& b : cfg.budgets)
        out << "budget = " << fmt_double(b.amount) << (b.fraction_of_core ? "m" : "") << '\n';
    for (const std::string& a : cfg.algos) out << "algo = " << a << '\n';
    out << "geo.epsilon = " << fmt_double(cfg.geo_epsilon) << '\n';
    out << "snp.epsilon = " << fmt_double(cfg.snp_epsilon) << '\n';
    out << "snp.sample = " << cfg.snp_sample << '\n';
    out << "snp.seed = " << cfg.snp_seed << '\n';
    out << "saa.samples = " << cfg.saa_samples << '\n';
    out << "saa.seed = " << cfg.saa_seed << '\n';
    out << "eval = " << cfg.eval << '\n';
    out << "eval.samples = " << cfg.eval_samples << '\n';
    out << "eval.seed = " << cfg.eval_seed << '\n';
    out << "repetitions = " << cfg.repetitions << '\n';
    out << "workers = " << cfg.workers << '\n';
    out << "timing = " << (cfg.timing ? "true" : "false") << '\n';
    out << "seed = " << cfg.seed << '\n';
    out << "plot.logy = " << (cfg.plot_logy ? "true" : "false") << '\n';
    for (double f : cfg.scale_fractions) out << "scale.fraction = " << fmt_double(f) << '\n';
}

void write_csv(const std::vector<CsvRow>& rows, std::ostream& out) {
    out << "experiment,algo,budget,value,stderr,time_ms,seed\n";
    for (const CsvRow& r : rows)
        out << r.experiment << ',' << r.algo << ',' << r.budget << ',' << fmt_double(r.value)
            << ',' << fmt_double(r.stderr_) << ',' << fmt_double(r.time_ms) << ',' << r.seed
            << '\n';
}

std::vector<CsvRow> read_csv(std::istream& in) {
    std::vector<CsvRow> rows;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    if (line != "experiment,algo,budget,value,stderr,time_ms,seed")
        throw std::runtime_error("csv: unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t pos = 0;
        while (true) {
            auto c = line.find(',', pos);
            f.push_back(line.substr(pos, c - pos));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        if (f.size() != 7) throw std::runtime_error("csv: bad field count");
        CsvRow r;
        r.experiment = f[0];
        r.algo = f[1];
        r.budget = static_cast<unsigned>(parse_u64(f[2], "budget"));
        r.value = parse_num(f[3], "value");
        r.stderr_ = parse_num(f[4], "stderr");
        r.time_ms = parse_num(f[5], "time_ms");
        r.seed = parse_u64(f[6], "seed");
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts;  // budget, mean value
};

std::vector<Series> aggregate(const std::vector<CsvRow>& rows) {
    std::vector<Series> out;
    auto series_of = [&](const std::string& algo) -> Series& {
        for (Series& s : out)
            if (s.name == algo) return s;
        out.push_back({algo, {}});
        return out.back();
    };
    std::map<std::pair<std::string, unsigned>, std::pair<double, std::size_t>> acc;
    std::vector<std::pair<std::string, unsigned>> order;
    for (const CsvRow& r : rows) {
        auto key = std::make_pair(r.algo, r.budget);
        if (!acc.count(key)) order.push_back(key);
        auto& [sum, cnt] = acc[key];
        sum += r.value;
        ++cnt;
    }
    for (const auto& key : order) {
        auto& [sum, cnt] = acc[key];
        series_of(key.first).pts.emplace_back(static_cast<double>(key.second),
                                              sum / static_cast<double>(cnt));
    }
    for (Series& s : out)
        std::sort(s.pts.begin(), s.pts.end());
    return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

void render_svg(const std::vector<CsvRow>& rows, std::ostream& out,
                const std::string& title, bool logy) {
    const double W = 760, H = 460, ml = 70, mr = 160, mt = 40, mb = 50;
    std::vector<Series> series = aggregate(rows);

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Series& s : series)
        for (auto [x, y] : s.pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            double yy = y;
            if (logy) yy = std::log10(std::max(yy, 1e-12));
            ymin = std::min(ymin, yy);
            ymax = std::max(ymax, yy);
        }
    if (series.empty()) {
        xmin = 0; xmax = 1; ymin = 0; ymax = 1;
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    double ypad = 0.06 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) {
        double yy = logy ? std::log10(std::max(y, 1e-12)) : y;
        return H - mb - (yy - ymin) / (ymax - ymin) * (H - mt - mb);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" << title << "</text>\n";

    // Axes.
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double fx = xmin + (xmax - xmin) * i / 5.0;
        double fy = ymin + (ymax - ymin) * i / 5.0;
        double yval = logy ? std::pow(10.0, fy) : fy;
        out << "<line x1=\"" << px(fx) << "\" y1=\"" << H - mb << "\" x2=\"" << px(fx)
            << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(fx) << "\" y=\"" << H - mb + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_double(std::round(fx * 100.0) / 100.0) << "</text>\n";
        double py_tick = H - mb - (fy - ymin) / (ymax - ymin) * (H - mt - mb);
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py_tick << "\" x2=\"" << ml << "\" y2=\""
            << py_tick << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py_tick + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_double(std::round(yval * 100.0) / 100.0) << "</text>\n";
    }
    out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">budget k</text>\n";
    out << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " << (mt + H - mb) / 2 << ")\">expected influence</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % 8];
        const Series& s = series[si];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (auto [x, y] : s.pts) out << px(x) << ',' << py(y) << ' ';
        out << "\"/>\n";
        for (auto [x, y] : s.pts)
            out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
        double ly = mt + 18.0 * static_cast<double>(si);
        out << "<line x1=\"" << W - mr + 12 << "\" y1=\"" << ly << "\" x2=\"" << W - mr + 34
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << W - mr + 40 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
    }
    out << "</svg>\n";
}

namespace {

struct PreparedInput {
    Graph graph;
    std::vector<double> node_weight;
    std::vector<NodeId> base_core;
};

std::vector<NodeId> sample_core(std::size_t node_count, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::runtime_error("core.fraction must lie in (0,1]");
    std::size_t want = static_cast<std::size_t>(std::round(fraction * static_cast<double>(node_count)));
    want = std::max<std::size_t>(1, std::min(want, node_count));
    std::vector<NodeId> pool(node_count);
    for (NodeId i = 0; i < node_count; ++i) pool[i] = i;
    Rng rng(seed);
    for (std::size_t s = 0; s < want; ++s) {
        std::size_t r = s + rng.below(node_count - s);
        std::swap(pool[s], pool[r]);
    }
    pool.resize(want);
    std::sort(pool.begin(), pool.end());
    return pool;
}

PreparedInput prepare_input(const ExperimentConfig& cfg) {
    PreparedInput in;
    if (!cfg.graph_file.empty() && cfg.generator)
        throw std::runtime_error("config: give either graph or gen.*, not both");
    if (!cfg.graph_file.empty())
        in.graph = load_edge_list_file(cfg.graph_file);
    else if (cfg.generator)
        in.graph = generate(*cfg.generator);
    else
        throw std::runtime_error("config: no input graph (graph or gen.kind)");

    if (cfg.weights == "degree")
        in.node_weight = degree_weights(in.graph);
    else if (cfg.weights == "voter")
        in.node_weight = voter_weights(in.graph, cfg.voter_steps);
    else
        throw std::runtime_error("config: weights must be degree or voter");

    if (!cfg.core_file.empty()) {
        std::ifstream cf(cfg.core_file);
        if (!cf) throw std::runtime_error("cannot open core file: " + cfg.core_file);
        std::int64_t id;
        while (cf >> id) {
            if (id < 0 || static_cast<std::size_t>(id) >= in.graph.node_count())
                throw std::runtime_error("core file id out of range: " + std::to_string(id));
            in.base_core.push_back(static_cast<NodeId>(id));
        }
        std::sort(in.base_core.begin(), in.base_core.end());
        in.base_core.erase(std::unique(in.base_core.begin(), in.base_core.end()),
                           in.base_core.end());
        if (in.base_core.empty()) throw std::runtime_error("core file holds no ids");
    }
    return in;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

struct AlgoOutcome {
    double value = 0.0;
    double stderr_ = 0.0;
    double solve_ms = 0.0;
    std::string detail;
};

AlgoOutcome run_algo(const std::string& algo, const BipartiteInstance& inst, unsigned k,
                     const ExperimentConfig& cfg, unsigned rep) {
    AlgoOutcome out;
    const std::uint64_t rep_seed = cfg.seed + rep;
    SeedingSolution sol;
    bool adaptive = false;

    Timer timer;
    if (algo == "greedy") {
        GreedyOptions o;
        o.workers = cfg.workers;
        sol = run(inst, k, o);
        adaptive = true;
    } else if (algo == "greedy-geo") {
        GreedyOptions o;
        o.strategy = SplitStrategy::geometric(cfg.geo_epsilon);
        o.workers = cfg.workers;
        sol = run(inst, k, o);
        adaptive = true;
    } else if (algo == "snp") {
        sol = run_sample_and_prune(inst, k, cfg.snp_epsilon, cfg.snp_sample,
                                   mix_seed(cfg.snp_seed, rep));
        adaptive = true;
    } else if (algo == "saa-greedy") {
        GreedyOptions o;
        o.workers = cfg.workers;
        std::size_t cap = inst.neighbor_count();
        o.saa_samples = std::min(cfg.saa_samples == 0 ? cap : cfg.saa_samples, cap);
        o.saa_samples = std::max<std::size_t>(1, o.saa_samples);
        o.saa_seed = mix_seed(cfg.saa_seed, rep);
        sol = run(inst, k, o);
        adaptive = true;
    } else if (algo == "lp") {
        SeedingLP lp = build_lp(inst, k);
        FractionalSolution frac = solve_lp(lp);
        sol = pipage_round(inst, lp, frac);
        adaptive = true;
        out.detail = "lp_objective=" + fmt_double(frac.objective) +
                     " iterations=" + std::to_string(frac.iterations);
    } else if (algo == "rn") {
        auto S = baseline_rn(inst, k, mix_seed(rep_seed, 0xa1));
        for (std::uint32_t ci : S) out.value += inst.core_weight[ci];
    } else if (algo == "im") {
        auto S = baseline_im(inst, k);
        for (std::uint32_t ci : S) out.value += inst.core_weight[ci];
    } else if (algo == "rf") {
        RfSelection sel = baseline_rf(inst, k, mix_seed(rep_seed, 0xb2));
        out.value = sel.expected_value;
    } else {
        throw std::runtime_error("unknown algo: " + algo);
    }
    out.solve_ms = timer.ms();

    if (adaptive) {
        const unsigned t = k - static_cast<unsigned>(sol.first_stage.size());
        if (cfg.eval == "none") {
            out.value = sol.value;  // solver objective, no realization average
        } else if (cfg.eval == "exact") {
            out.value = adaptive_value_exact(inst, sol.first_stage, t);
        } else {
            McEstimate est = adaptive_value_mc(inst, sol.first_stage, t, cfg.eval_samples,
                                               mix_seed(cfg.eval_seed, rep), cfg.workers);
            out.value = est.mean;
            out.stderr_ = est.stderr_;
        }
        if (!sol.note.empty()) out.detail += (out.detail.empty() ? "" : " ") + sol.note;
    }
    return out;
}

BipartiteInstance instance_for_rep(const PreparedInput& in, const ExperimentConfig& cfg,
                                   unsigned rep, std::vector<NodeId>* core_out) {
    std::vector<NodeId> core;
    if (!in.base_core.empty()) {
        core = in.base_core;
    } else {
        std::uint64_t cs = cfg.core_resample ? cfg.core_seed + rep : cfg.core_seed;
        core = sample_core(in.graph.node_count(), cfg.core_fraction, cs);
    }
    std::vector<double> prob(in.graph.node_count(), 0.0);
    BuildOptions bo;
    bo.exclude_core_from_neighbors = cfg.exclude_core_from_neighbors;
    BipartiteInstance inst = build_instance(in.graph, core, in.node_weight, prob, bo);
    ProbabilityModel pm = cfg.prob;
    pm.seed = cfg.prob.seed + rep;
    assign_probabilities(inst, pm);
    if (core_out) *core_out = std::move(core);
    return inst;
}

}  // namespace

std::vector<CsvRow> run_experiment(const ExperimentConfig& cfg,
                                   const std::filesystem::path& out_dir) {
    if (cfg.budgets.empty()) throw std::runtime_error("config: no budgets");
    if (cfg.algos.empty()) throw std::runtime_error("config: no algos");
    if (cfg.repetitions < 1) throw std::runtime_error("config: repetitions must be >= 1");

    std::filesystem::create_directories(out_dir);
    std::ofstream log(out_dir / "run.log");
    Timer total;
    serialize_config(cfg, log);

    PreparedInput in = prepare_input(cfg);
    log << "---\n";
    log << "graph nodes=" << in.graph.node_count() << " edges=" << in.graph.edge_count() << '\n';

    std::vector<CsvRow> rows;
    for (unsigned rep = 0; rep < cfg.repetitions; ++rep) {
        std::vector<NodeId> core;
        BipartiteInstance inst = instance_for_rep(in, cfg, rep, &core);
        log << "rep=" << rep << " core=" << inst.core_size()
            << " neighbors=" << inst.neighbor_count() << '\n';
        for (const std::string& algo : cfg.algos) {
            for (const BudgetSpec& bs : cfg.budgets) {
                unsigned k = bs.resolve(inst.core_size());
                AlgoOutcome o = run_algo(algo, inst, k, cfg, rep);
                CsvRow r;
                r.experiment = cfg.experiment;
                r.algo = algo;
                r.budget = k;
                r.value = o.value;
                r.stderr_ = o.stderr_;
                r.time_ms = cfg.timing ? o.solve_ms : 0.0;
                r.seed = cfg.seed + rep;
                rows.push_back(r);
                log << "rep=" << rep << " algo=" << algo << " k=" << k
                    << " value=" << fmt_double(o.value);
                if (!o.detail.empty()) log << ' ' << o.detail;
                log << '\n';
            }
        }
    }

    {
        std::ofstream csv(out_dir / "results.csv");
        write_csv(rows, csv);
    }
    {
        std::ofstream svg(out_dir / "figure-value-vs-budget.svg");
        render_svg(rows, svg, cfg.experiment, cfg.plot_logy);
    }
    log << "rows=" << rows.size() << '\n';
    log << "elapsed_ms=" << fmt_double(total.ms()) << '\n';
    return rows;
}

std::vector<CsvRow> run_scaling(const ExperimentConfig& cfg,
                                const std::filesystem::path& out_dir) {
    if (cfg.scale_fractions.empty())
        throw std::runtime_error("config: scale needs at least one scale.fraction");
    if (cfg.budgets.empty()) throw std::runtime_error("config: no budgets");
    if (cfg.algos.empty()) throw std::runtime_error("config: no algos");

    std::filesystem::create_directories(out_dir);
    std::ofstream log(out_dir / "run.log");
    Timer total;
    serialize_config(cfg, log);

    PreparedInput in = prepare_input(cfg);
    log << "---\n";
    log << "graph nodes=" << in.graph.node_count() << " edges=" << in.graph.edge_count() << '\n';

    // Base core, then deterministic subsample prefixes per rung.
    std::vector<NodeId> base;
    if (!in.base_core.empty()) {
        base = in.base_core;
    } else {
        base = sample_core(in.graph.node_count(), cfg.core_fraction, cfg.core_seed);
    }
    std::vector<NodeId> shuffled = base;
    Rng rng(mix_seed(cfg.core_seed, 0x5ca1e));
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.below(i)]);

    ExperimentConfig timed = cfg;
    timed.timing = true;

    std::vector<CsvRow> rows;
    for (double frac : cfg.scale_fractions) {
        if (!(frac > 0.0 && frac <= 1.0))
            throw std::runtime_error("scale.fraction must lie in (0,1]");
        std::size_t want = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::round(frac * static_cast<double>(base.size()))));
        want = std::min(want, shuffled.size());
        std::vector<NodeId> core(shuffled.begin(), shuffled.begin() + want);
        std::sort(core.begin(), core.end());

        std::vector<double> prob(in.graph.node_count(), 0.0);
        BuildOptions bo;
        bo.exclude_core_from_neighbors = cfg.exclude_core_from_neighbors;
        BipartiteInstance inst = build_instance(in.graph, core, in.node_weight, prob, bo);
        ProbabilityModel pm = cfg.prob;
        assign_probabilities(inst, pm);
        log << "fraction=" << fmt_double(frac) << " core=" << inst.core_size()
            << " neighbors=" << inst.neighbor_count() << '\n';

        for (const std::string& algo : cfg.algos) {
            for (const BudgetSpec& bs : cfg.budgets) {
                unsigned k = bs.resolve(inst.core_size());
                AlgoOutcome o = run_algo(algo, inst, k, timed, 0);
                CsvRow r;
                r.experiment = cfg.experiment + "@" + fmt_double(frac);
                r.algo = algo;
                r.budget = k;
                r.value = o.value;
                r.stderr_ = o.stderr_;
                r.time_ms = o.solve_ms;
                r.seed = cfg.seed;
                rows.push_back(r);
                log << "fraction=" << fmt_double(frac) << " algo=" << algo << " k=" << k
                    << " value=" << fmt_double(o.value) << " time_ms=" << fmt_double(o.solve_ms);
                if (!o.detail.empty()) log << ' ' << o.detail;
                log << '\n';
            }
        }
    }

    {
        std::ofstream csv(out_dir / "results.csv");
        write_csv(rows, csv);
    }
    {
        std::ofstream svg(out_dir / "figure-time-vs-size.svg");
        std::vector<CsvRow> trows = rows;
        for (CsvRow& r : trows) r.value = r.time_ms;  // plot solver time per rung
        render_svg(trows, svg, cfg.experiment + " (time_ms)", cfg.plot_logy);
    }
    log << "rows=" << rows.size() << '\n';
    log << "elapsed_ms=" << fmt_double(total.ms()) << '\n';
    return rows;
}

}  // namespace adaseed
