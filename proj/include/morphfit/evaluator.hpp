#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morphfit/vector_store.hpp"

namespace morphfit {

struct SimilarityEntry {
    std::string word1;
    std::string word2;
    double gold = 0.0;
};

struct SimilarityDataset {
    std::vector<SimilarityEntry> entries;

    /// `word1<TAB>word2<TAB>score` lines; a first line whose third field is not numeric is a header.
    static SimilarityDataset load(const std::filesystem::path& path, bool lowercase = false);
    static SimilarityDataset parse(const std::string& text, bool lowercase = false);
};

/// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman's rho: Pearson correlation of the average ranks. Throws on length mismatch,
/// fewer than two values or a constant input.
double spearman(std::span<const double> a, std::span<const double> b);

struct EvaluationResult {
    double rho = 0.0;
    std::size_t covered = 0;
    std::size_t total = 0;
};

/// Cosine vs gold over in-vocabulary entries; OOV entries are skipped and reported.
EvaluationResult evaluate(const VectorStore& store, const SimilarityDataset& dataset);

/// `rho=<float> covered=<int> total=<int>`
std::string format_evaluation(const EvaluationResult& result);

/// Top-k words by cosine to `word`, itself excluded; descending, ties lexicographic.
std::vector<std::pair<std::string, double>> neighbors(const VectorStore& store, const std::string& word, std::size_t k);

}  // namespace morphfit
