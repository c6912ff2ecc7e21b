#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "morphfit/attract_repel.hpp"
#include "morphfit/constraints.hpp"
#include "morphfit/evaluator.hpp"

namespace morphfit {

// Whole-command drivers shared by the CLI and the Python bindings. Logs and statistics go
// to `log`; machine-readable results are returned.

struct ExtractConfig {
    std::string language = "en";
    std::filesystem::path vocab;
    std::filesystem::path out_attract;
    std::filesystem::path out_repel;
    std::optional<std::filesystem::path> rules;  // overrides the built-in table
    long long min_freq = 10;
    bool lowercase = false;
    unsigned threads = 1;
};

struct ExtractStats {
    std::size_t vocabulary = 0;
    std::size_t attract = 0;
    std::size_t repel = 0;
};

/// `|W|=… |A|=… |R|=…`
std::string format_stats(const ExtractStats& stats);
ExtractStats run_extract(const ExtractConfig& config, std::ostream& log);

struct FitConfig {
    std::filesystem::path vectors;
    std::filesystem::path attract;
    std::filesystem::path repel;  // optional: empty path means no repel constraints
    std::filesystem::path out;
    std::filesystem::path cost_log;  // defaults to <out>.costs.tsv
    TrainingConfig training;
    bool normalize = true;
    bool lowercase = false;
};

FitResult run_fit(const FitConfig& config, std::ostream& log);

struct FixConfig {
    std::filesystem::path vectors;
    std::filesystem::path attract;
    std::filesystem::path freq;
    std::filesystem::path out;
    bool normalize = true;
    bool lowercase = false;
};

void run_fix(const FixConfig& config, std::ostream& log);

struct EvalConfig {
    std::filesystem::path vectors;
    std::filesystem::path dataset;
    bool normalize = true;
    bool lowercase = false;
};

EvaluationResult run_eval(const EvalConfig& config, std::ostream& log);

struct NeighborsConfig {
    std::filesystem::path vectors;
    std::string word;
    std::size_t k = 10;
    bool normalize = true;
    bool lowercase = false;
};

std::vector<std::pair<std::string, double>> run_neighbors(const NeighborsConfig& config, std::ostream& log);

}  // namespace morphfit
