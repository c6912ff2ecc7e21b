// morphfit: extract morphological constraints, fit or fix a vector space, evaluate it.

#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "morphfit/pipeline.hpp"

namespace {

constexpr int kModuleError = 1;
constexpr int kUsageError = 2;

void add_store_flags(CLI::App* cmd, bool& lowercase, bool& raw) {
    cmd->add_flag("--lowercase", lowercase, "Lowercase every word on load");
    cmd->add_flag("--no-normalize", raw, "Keep input vectors as they are instead of unit-normalising rows");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Morphological specialisation of word vector spaces"};
    app.require_subcommand(1);
    // One file can hold options for every subcommand under [extract], [fit], ... sections.
    app.set_config("--config", "", "TOML/INI file with per-subcommand sections");
    app.fallthrough();

    morphfit::ExtractConfig extract;
    std::string vocab, out_attract, out_repel, rules;
    auto* cmd_extract = app.add_subcommand("extract", "Build ATTRACT/REPEL constraint files from a vocabulary");
    cmd_extract->add_option("--lang", extract.language, "Rule language: en, de, it, ru")->capture_default_str();
    cmd_extract->add_option("--vocab", vocab, "Vocabulary: one word per line, optionally word<TAB>count")->required();
    cmd_extract->add_option("--out-attract", out_attract, "Output ATTRACT pairs")->required();
    cmd_extract->add_option("--out-repel", out_repel, "Output REPEL pairs")->required();
    cmd_extract->add_option("--min-freq", extract.min_freq, "Frequency cut-off")->capture_default_str();
    cmd_extract->add_option("--rules", rules, "Rule table file overriding the built-in language rules");
    cmd_extract->add_option("--threads", extract.threads, "Extraction worker threads")->capture_default_str();
    cmd_extract->add_flag("--lowercase", extract.lowercase, "Lowercase the vocabulary");

    morphfit::FitConfig fit;
    std::string fit_vectors, fit_attract, fit_repel, fit_out, fit_costs;
    std::optional<std::size_t> batch_size;
    bool fit_raw = false;
    auto* cmd_fit = app.add_subcommand("fit", "Fine-tune vectors with the Attract-Repel objective");
    cmd_fit->add_option("--vectors", fit_vectors, "Input vectors (text format)")->required();
    cmd_fit->add_option("--attract", fit_attract, "ATTRACT pairs")->required();
    cmd_fit->add_option("--repel", fit_repel, "REPEL pairs");
    cmd_fit->add_option("--out", fit_out, "Output vectors")->required();
    cmd_fit->add_option("--cost-log", fit_costs, "Per-epoch cost log (default <out>.costs.tsv)");
    auto& t = fit.training;
    cmd_fit->add_option("--epochs", t.epochs)->capture_default_str();
    cmd_fit->add_option("--delta-att", t.delta_att)->capture_default_str();
    cmd_fit->add_option("--delta-rpl", t.delta_rpl)->capture_default_str();
    cmd_fit->add_option("--lambda-reg", t.lambda_reg)->capture_default_str();
    cmd_fit->add_option("--batch-size", batch_size, "Sets both batch sizes");
    cmd_fit->add_option("--attract-batch-size", t.attract_batch_size)->capture_default_str();
    cmd_fit->add_option("--repel-batch-size", t.repel_batch_size)->capture_default_str();
    cmd_fit->add_option("--lr", t.learning_rate, "AdaGrad learning rate")->capture_default_str();
    cmd_fit->add_option("--seed", t.rng_seed)->capture_default_str();
    cmd_fit->add_flag("--normalize-output", t.normalize_after, "Unit-normalise rows after fitting");
    add_store_flags(cmd_fit, fit.lowercase, fit_raw);

    morphfit::FixConfig fix;
    std::string fix_vectors, fix_attract, fix_freq, fix_out;
    bool fix_raw = false;
    auto* cmd_fix = app.add_subcommand("fix", "Morph-fix baseline: tie inflections to their most frequent form");
    cmd_fix->add_option("--vectors", fix_vectors)->required();
    cmd_fix->add_option("--attract", fix_attract)->required();
    cmd_fix->add_option("--freq", fix_freq, "word<TAB>count lines")->required();
    cmd_fix->add_option("--out", fix_out)->required();
    add_store_flags(cmd_fix, fix.lowercase, fix_raw);

    morphfit::EvalConfig eval;
    std::string eval_vectors, eval_dataset;
    bool eval_raw = false;
    auto* cmd_eval = app.add_subcommand("eval", "Spearman correlation against a word-pair similarity dataset");
    cmd_eval->add_option("--vectors", eval_vectors)->required();
    cmd_eval->add_option("--dataset", eval_dataset, "word1<TAB>word2<TAB>score lines")->required();
    add_store_flags(cmd_eval, eval.lowercase, eval_raw);

    morphfit::NeighborsConfig nn;
    std::string nn_vectors;
    bool nn_raw = false;
    auto* cmd_nn = app.add_subcommand("neighbors", "Nearest neighbours of a word by cosine");
    cmd_nn->add_option("--vectors", nn_vectors)->required();
    cmd_nn->add_option("--word", nn.word)->required();
    cmd_nn->add_option("-k", nn.k)->capture_default_str()->check(CLI::PositiveNumber);
    add_store_flags(cmd_nn, nn.lowercase, nn_raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (cmd_extract->parsed()) {
            extract.vocab = vocab;
            extract.out_attract = out_attract;
            extract.out_repel = out_repel;
            if (!rules.empty()) extract.rules = rules;
            morphfit::run_extract(extract, std::cerr);
        } else if (cmd_fit->parsed()) {
            fit.vectors = fit_vectors;
            fit.attract = fit_attract;
            fit.repel = fit_repel;
            fit.out = fit_out;
            fit.cost_log = fit_costs;
            fit.normalize = !fit_raw;
            if (batch_size) t.attract_batch_size = t.repel_batch_size = *batch_size;
            morphfit::run_fit(fit, std::cerr);
        } else if (cmd_fix->parsed()) {
            fix.vectors = fix_vectors;
            fix.attract = fix_attract;
            fix.freq = fix_freq;
            fix.out = fix_out;
            fix.normalize = !fix_raw;
            morphfit::run_fix(fix, std::cerr);
        } else if (cmd_eval->parsed()) {
            eval.vectors = eval_vectors;
            eval.dataset = eval_dataset;
            eval.normalize = !eval_raw;
            std::cout << morphfit::format_evaluation(morphfit::run_eval(eval, std::cerr)) << '\n';
        } else if (cmd_nn->parsed()) {
            nn.vectors = nn_vectors;
            nn.normalize = !nn_raw;
            std::cout << std::fixed << std::setprecision(6);
            for (const auto& [word, cosine] : morphfit::run_neighbors(nn, std::cerr))
                std::cout << word << '\t' << cosine << '\n';
        }
    } catch (const morphfit::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kModuleError;
    }
    return 0;
}
