#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morphfit/error.hpp"
#include "morphfit/morph_rules.hpp"

namespace morphfit {

using WordPair = std::pair<std::string, std::string>;
using PairList = std::vector<WordPair>;

/// ATTRACT (inflectional synonyms) and REPEL (derivational antonyms), both closed under
/// order reversal, duplicate-free and without self-pairs.
struct ConstraintSet {
    PairList attract;
    PairList repel;
};

/// Vocabulary entry; `count` is absent for plain word lists.
struct VocabEntry {
    std::string word;
    std::optional<long long> count;
};

struct BuildOptions {
    unsigned threads = 1;
};

/// Every in-vocabulary pair produced by the attract rules, both orders, first-seen order.
PairList extract_attract(const std::vector<std::string>& vocab, const RuleSet& rules, const BuildOptions& options = {});

/// Every in-vocabulary antonym pair, both orders, first-seen order.
PairList extract_repel(const std::vector<std::string>& vocab, const RuleSet& rules, const BuildOptions& options = {});

/// One-step transitive closure of `repel` through `attract` partners.
/// Returns the input repel pairs followed by the new ones.
PairList expand_repel(const PairList& attract, const PairList& repel);

/// Sorts and deduplicates the vocabulary, extracts both lists, expands REPEL and
/// drops ATTRACT pairs that also appear in REPEL.
ConstraintSet build_constraints(std::vector<std::string> vocab, const RuleSet& rules, const BuildOptions& options = {});
ConstraintSet build_constraints(std::vector<std::string> vocab, Language language, const BuildOptions& options = {});

/// `word` or `word<TAB>count` per line.
std::vector<VocabEntry> load_vocab(const std::filesystem::path& path, bool lowercase = false);
/// Keeps entries with count >= min_count; entries without a count are kept.
std::vector<std::string> apply_cutoff(const std::vector<VocabEntry>& entries, long long min_count);

/// `left<TAB>right` per line.
PairList load_pairs(const std::filesystem::path& path, bool lowercase = false);
void save_pairs(const PairList& pairs, const std::filesystem::path& path);
std::string format_pairs(const PairList& pairs);

}  // namespace morphfit
