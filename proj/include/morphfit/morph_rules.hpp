#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "morphfit/error.hpp"

namespace morphfit {

enum class Language { en, de, it, ru };

Language parse_language(std::string_view code);
std::string_view language_code(Language language);

enum class RuleKind {
    append_suffixes,             // w + v
    strip_then_append,           // w[:-strip] + v
    suffix_group_cross_product,  // {w} ∪ {prefix + w[:-strip] + suffix}, all pairs
    umlaut_plural,               // last a/o/u umlauted, + v
};

std::string_view rule_kind_name(RuleKind kind);
RuleKind parse_rule_kind(std::string_view name);

/// One generated form: `prefix + stem + suffix`. Almost every variant has an empty prefix;
/// the German past participle (ge- ... -t) is the exception.
struct Affix {
    std::string prefix;
    std::string suffix;

    bool operator==(const Affix&) const = default;
};

/// A single string transform. Strings are UTF-8; `strip` counts Unicode scalar values.
struct MorphRule {
    RuleKind kind = RuleKind::append_suffixes;
    std::string trigger;               // required ending, empty matches every word
    std::size_t strip = 0;             // characters removed before appending
    std::vector<Affix> variants;
    std::vector<std::string> excluded_endings;  // the rule does not fire on these endings

    bool operator==(const MorphRule&) const = default;
};

struct SuffixSwap {
    std::string from;
    std::string to;

    bool operator==(const SuffixSwap&) const = default;
};

struct RuleSet {
    Language language = Language::en;
    std::vector<MorphRule> attract_rules;
    std::vector<std::string> repel_prefixes;
    std::vector<SuffixSwap> repel_suffix_swaps;

    bool operator==(const RuleSet&) const = default;
};

/// The built-in tables for English, German, Italian and Russian.
RuleSet builtin_rules(Language language);

/// Candidate partners of `word` under one rule. Deterministic, never contains `word`,
/// empty when the trigger does not match. For group rules this is the whole group minus `word`.
std::vector<std::string> apply_rule(const MorphRule& rule, std::string_view word);

/// Derivational antonym candidates: every prefix + word, then every applicable suffix swap.
std::vector<std::string> antonym_candidates(const RuleSet& rules, std::string_view word);

// Line-oriented table format, tab separated:
//   language  <code>
//   attract   <kind>  <trigger|->  <strip>  <variant,variant,...>  [<excluded,...>]
//   repel-prefix  <prefix>
//   repel-swap    <from>  <to>
// A variant with a prefix is written `prefix~suffix` (`ge~t`). Lines starting with # are comments.
std::string format_rules(const RuleSet& rules);
RuleSet parse_rules(std::string_view text);
RuleSet load_rules(const std::string& path);

}  // namespace morphfit
