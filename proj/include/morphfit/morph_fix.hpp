#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>

#include "morphfit/constraints.hpp"
#include "morphfit/vector_store.hpp"

namespace morphfit {

/// Corpus frequencies; words absent from the table count as 0.
struct FrequencyTable {
    std::unordered_map<std::string, long long> counts;

    long long count(const std::string& word) const;
    static FrequencyTable load(const std::filesystem::path& path);
};

/// Ties every word in an attract-connected component to the initial vector of the component's
/// most frequent member (ties: lexicographically smallest). Words in no pair keep their row.
/// Pairs with out-of-vocabulary words are ignored.
VectorStore morph_fix(const VectorStore& store, const PairList& attract, const FrequencyTable& frequencies);

}  // namespace morphfit
