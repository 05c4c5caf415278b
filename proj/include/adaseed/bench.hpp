#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adaseed/generators.hpp"
#include "adaseed/influence.hpp"

namespace adaseed {

// Flat `key = value` config. '#' starts a comment, blank lines are skipped,
// repeated keys (budget, algo, scale.fraction) accumulate in order.
struct BudgetSpec {
    double amount = 0.0;
    bool fraction_of_core = false;  // "0.2m" style: k = round(amount * |X|)

    unsigned resolve(std::size_t core_size) const;
};

struct ExperimentConfig {
    std::string experiment = "run";

    // Input graph: file path or generator.
    std::string graph_file;
    std::optional<GeneratorSpec> generator;

    // Core selection: explicit file (one id per line) or a random fraction.
    std::string core_file;
    double core_fraction = 0.0;
    std::uint64_t core_seed = 1;
    // Re-draw the core each repetition (seed + rep). Ignored with core_file.
    bool core_resample = true;

    bool exclude_core_from_neighbors = false;

    std::string weights = "degree";  // degree | voter
    unsigned voter_steps = 50;

    ProbabilityModel prob;

    std::vector<BudgetSpec> budgets;
    std::vector<std::string> algos;  // greedy greedy-geo snp lp rn im rf saa-greedy

    double geo_epsilon = 1.0;
    double snp_epsilon = 0.2;
    std::size_t snp_sample = 64;
    std::uint64_t snp_seed = 1;
    std::size_t saa_samples = 0;  // 0 = neighbor count (capped there regardless)
    std::uint64_t saa_seed = 1;

    std::string eval = "exact";  // exact | mc | none
    std::size_t eval_samples = 10000;
    std::uint64_t eval_seed = 1;

    unsigned repetitions = 1;
    unsigned workers = 1;
    bool timing = false;  // when false, time_ms is written as 0 so CSV bytes are reproducible
    std::uint64_t seed = 1;
    bool plot_logy = false;

    std::vector<double> scale_fractions;  // ladder for `scale`, core subsampling
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);
void serialize_config(const ExperimentConfig& cfg, std::ostream& out);

struct CsvRow {
    std::string experiment;
    std::string algo;
    unsigned budget = 0;
    double value = 0.0;
    double stderr_ = 0.0;
    double time_ms = 0.0;
    std::uint64_t seed = 0;
};

// Fixed schema: experiment,algo,budget,value,stderr,time_ms,seed.
void write_csv(const std::vector<CsvRow>& rows, std::ostream& out);
std::vector<CsvRow> read_csv(std::istream& in);

// Renders value-vs-budget polylines, one series per algo, mean over
// repetitions. Reads only the CSV, never solver internals.
void render_svg(const std::vector<CsvRow>& rows, std::ostream& out,
                const std::string& title, bool logy);

// Full pipeline: build input, run every algo at every budget for every
// repetition, evaluate, and write results.csv, figure-value-vs-budget.svg
// and run.log into out_dir.
std::vector<CsvRow> run_experiment(const ExperimentConfig& cfg,
                                   const std::filesystem::path& out_dir);

// Scaling harness: subsample the core at each configured fraction and time
// every algo at every budget. timing is forced on. Writes the same file set.
std::vector<CsvRow> run_scaling(const ExperimentConfig& cfg,
                                const std::filesystem::path& out_dir);

}  // namespace adaseed
