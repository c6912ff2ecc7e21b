#include "morphfit/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "morphfit/morph_fix.hpp"
#include "morphfit/utf8.hpp"

namespace morphfit {

namespace {

void require_file(const std::filesystem::path& path, std::string_view what) {
    if (path.empty()) throw InputError(std::string(what) + " path is required");
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) throw InputError(std::string(what) + " not found: " + path.string());
}

void flush(Warnings& warnings, std::ostream& log) {
    for (const auto& w : warnings) log << "warning: " << w << '\n';
    warnings.clear();
}

VectorStore load_store(const std::filesystem::path& path, bool normalize, bool lowercase, std::ostream& log) {
    require_file(path, "vectors file");
    Warnings warnings;
    auto store = VectorStore::load(path, {normalize, lowercase}, &warnings);
    flush(warnings, log);
    if (store.empty()) throw Error("empty store");
    return store;
}

}  // namespace

std::string format_stats(const ExtractStats& stats) {
    std::ostringstream out;
    out << "|W|=" << stats.vocabulary << " |A|=" << stats.attract << " |R|=" << stats.repel;
    return out.str();
}

ExtractStats run_extract(const ExtractConfig& config, std::ostream& log) {
    if (config.min_freq < 0) throw Error("min-freq must be non-negative");
    require_file(config.vocab, "vocabulary file");
    RuleSet rules = config.rules ? load_rules(config.rules->string()) : builtin_rules(parse_language(config.language));
    auto words = apply_cutoff(load_vocab(config.vocab, config.lowercase), config.min_freq);
    if (words.empty()) throw Error("empty vocabulary after cutoff");

    ConstraintSet constraints = build_constraints(words, rules, {config.threads});
    save_pairs(constraints.attract, config.out_attract);
    save_pairs(constraints.repel, config.out_repel);

    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    ExtractStats stats{words.size(), constraints.attract.size(), constraints.repel.size()};
    log << format_stats(stats) << '\n';
    return stats;
}

FitResult run_fit(const FitConfig& config, std::ostream& log) {
    config.training.validate();
    require_file(config.attract, "attract file");
    if (!config.repel.empty()) require_file(config.repel, "repel file");
    VectorStore store = load_store(config.vectors, config.normalize, config.lowercase, log);

    ConstraintSet constraints;
    constraints.attract = load_pairs(config.attract, config.lowercase);
    if (!config.repel.empty()) constraints.repel = load_pairs(config.repel, config.lowercase);

    Warnings warnings;
    FitResult result = fit(store, constraints, config.training, &warnings);
    flush(warnings, log);
    for (const auto& e : result.log)
        log << "epoch " << e.epoch << " cost " << e.cost.total() << '\n';

    result.store.save(config.out);
    auto cost_path = config.cost_log.empty() ? std::filesystem::path(config.out.string() + ".costs.tsv") : config.cost_log;
    std::ofstream costs(cost_path, std::ios::binary);
    if (!costs) throw Error("cannot write cost log: " + cost_path.string());
    costs << format_cost_log(result.log);
    return result;
}

void run_fix(const FixConfig& config, std::ostream& log) {
    require_file(config.attract, "attract file");
    require_file(config.freq, "frequency file");
    VectorStore store = load_store(config.vectors, config.normalize, config.lowercase, log);
    auto attract = load_pairs(config.attract, config.lowercase);
    auto freq = FrequencyTable::load(config.freq);
    if (config.lowercase) {
        FrequencyTable folded;
        for (const auto& [w, c] : freq.counts) folded.counts[utf8::lowercase(w)] += c;
        freq = std::move(folded);
    }
    morph_fix(store, attract, freq).save(config.out);
}

EvaluationResult run_eval(const EvalConfig& config, std::ostream& log) {
    require_file(config.dataset, "dataset file");
    VectorStore store = load_store(config.vectors, config.normalize, config.lowercase, log);
    return evaluate(store, SimilarityDataset::load(config.dataset, config.lowercase));
}

std::vector<std::pair<std::string, double>> run_neighbors(const NeighborsConfig& config, std::ostream& log) {
    VectorStore store = load_store(config.vectors, config.normalize, config.lowercase, log);
    std::string word = config.lowercase ? utf8::lowercase(config.word) : config.word;
    return neighbors(store, word, config.k);
}

}  // namespace morphfit
