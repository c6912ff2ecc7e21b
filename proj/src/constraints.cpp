#include "morphfit/constraints.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "morphfit/utf8.hpp"

namespace morphfit {

namespace {

struct PairHash {
    std::size_t operator()(const WordPair& p) const {
        std::size_t h = std::hash<std::string>{}(p.first);
        return h ^ (std::hash<std::string>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

class PairAccumulator {
public:
    void add(const std::string& a, const std::string& b) {
        if (a == b) return;
        push({a, b});
        push({b, a});
    }
    bool contains(const WordPair& p) const { return seen_.count(p) > 0; }
    PairList take() { return std::move(pairs_); }

private:
    void push(WordPair p) {
        if (seen_.insert(p).second) pairs_.push_back(std::move(p));
    }
    PairList pairs_;
    std::unordered_set<WordPair, PairHash> seen_;
};

using WordSet = std::unordered_set<std::string>;

// Raw (possibly duplicated) pairs generated from vocab[begin, end).
using Generator = void (*)(const std::string& word, const RuleSet& rules, const WordSet& vocab, PairList& out);

void attract_pairs_for(const std::string& word, const RuleSet& rules, const WordSet& vocab, PairList& out) {
    for (const auto& rule : rules.attract_rules) {
        auto candidates = apply_rule(rule, word);
        if (rule.kind == RuleKind::suffix_group_cross_product) {
            std::vector<const std::string*> members{&word};
            for (const auto& c : candidates)
                if (vocab.count(c)) members.push_back(&c);
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) out.emplace_back(*members[i], *members[j]);
        } else {
            for (const auto& c : candidates)
                if (vocab.count(c)) out.emplace_back(word, c);
        }
    }
}

void repel_pairs_for(const std::string& word, const RuleSet& rules, const WordSet& vocab, PairList& out) {
    for (const auto& c : antonym_candidates(rules, word))
        if (vocab.count(c)) out.emplace_back(word, c);
}

PairList extract(const std::vector<std::string>& vocab, const RuleSet& rules, const BuildOptions& options,
                 Generator generate) {
    const WordSet words(vocab.begin(), vocab.end());
    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, vocab.size()));
    std::vector<PairList> chunks(workers);
    auto run = [&](std::size_t k) {
        std::size_t begin = vocab.size() * k / workers;
        std::size_t end = vocab.size() * (k + 1) / workers;
        for (std::size_t i = begin; i < end; ++i) generate(vocab[i], rules, words, chunks[k]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(run, k);
    }
    // merged in vocabulary order, so the result does not depend on the worker count
    PairAccumulator acc;
    for (const auto& chunk : chunks)
        for (const auto& [a, b] : chunk) acc.add(a, b);
    return acc.take();
}

std::string read_file(const std::filesystem::path& path, std::string_view what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + std::string(what) + ": " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

template <typename F>
void for_each_line(const std::string& text, F&& f) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        f(line, line_no);
    }
}

}  // namespace

PairList extract_attract(const std::vector<std::string>& vocab, const RuleSet& rules, const BuildOptions& options) {
    return extract(vocab, rules, options, &attract_pairs_for);
}

PairList extract_repel(const std::vector<std::string>& vocab, const RuleSet& rules, const BuildOptions& options) {
    return extract(vocab, rules, options, &repel_pairs_for);
}

PairList expand_repel(const PairList& attract, const PairList& repel) {
    std::unordered_map<std::string, std::vector<std::string>> partners;
    for (const auto& [a, b] : attract) partners[a].push_back(b);

    PairAccumulator acc;
    for (const auto& [a, b] : repel) acc.add(a, b);
    static const std::vector<std::string> none;
    auto partners_of = [&](const std::string& w) -> const std::vector<std::string>& {
        auto it = partners.find(w);
        return it == partners.end() ? none : it->second;
    };
    for (const auto& [a, b] : repel) {
        const auto& pa = partners_of(a);
        const auto& pb = partners_of(b);
        for (const auto& a2 : pa) acc.add(a2, b);
        for (const auto& b2 : pb) acc.add(a, b2);
        for (const auto& a2 : pa)
            for (const auto& b2 : pb) acc.add(a2, b2);
    }
    return acc.take();
}

ConstraintSet build_constraints(std::vector<std::string> vocab, const RuleSet& rules, const BuildOptions& options) {
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());

    ConstraintSet out;
    PairList attract = extract_attract(vocab, rules, options);
    out.repel = expand_repel(attract, extract_repel(vocab, rules, options));

    // REPEL wins on conflicts
    std::unordered_set<WordPair, PairHash> repel_set(out.repel.begin(), out.repel.end());
    for (auto& p : attract)
        if (!repel_set.count(p)) out.attract.push_back(std::move(p));
    return out;
}

ConstraintSet build_constraints(std::vector<std::string> vocab, Language language, const BuildOptions& options) {
    return build_constraints(std::move(vocab), builtin_rules(language), options);
}

std::vector<VocabEntry> load_vocab(const std::filesystem::path& path, bool lowercase) {
    std::vector<VocabEntry> entries;
    for_each_line(read_file(path, "vocabulary file"), [&](const std::string& line, std::size_t line_no) {
        VocabEntry e;
        auto tab = line.find('\t');
        e.word = line.substr(0, tab);
        if (tab != std::string::npos) {
            std::string_view rest = std::string_view(line).substr(tab + 1);
            long long count = 0;
            auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), count);
            if (ec != std::errc() || ptr != rest.data() + rest.size() || count < 0)
                throw Error("vocabulary line " + std::to_string(line_no) + ": bad count '" + std::string(rest) + "'");
            e.count = count;
        }
        if (lowercase) e.word = utf8::lowercase(e.word);
        if (!e.word.empty()) entries.push_back(std::move(e));
    });
    return entries;
}

std::vector<std::string> apply_cutoff(const std::vector<VocabEntry>& entries, long long min_count) {
    std::vector<std::string> words;
    for (const auto& e : entries)
        if (!e.count || *e.count >= min_count) words.push_back(e.word);
    return words;
}

PairList load_pairs(const std::filesystem::path& path, bool lowercase) {
    PairList pairs;
    for_each_line(read_file(path, "constraint file"), [&](const std::string& line, std::size_t line_no) {
        auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
            throw Error("constraint line " + std::to_string(line_no) + ": expected left<TAB>right");
        WordPair p{line.substr(0, tab), line.substr(tab + 1)};
        if (lowercase) p = {utf8::lowercase(p.first), utf8::lowercase(p.second)};
        pairs.push_back(std::move(p));
    });
    return pairs;
}

std::string format_pairs(const PairList& pairs) {
    std::string out;
    for (const auto& [a, b] : pairs) {
        out += a;
        out += '\t';
        out += b;
        out += '\n';
    }
    return out;
}

void save_pairs(const PairList& pairs, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write constraint file: " + path.string());
    out << format_pairs(pairs);
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace morphfit
