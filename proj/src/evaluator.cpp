#include "morphfit/evaluator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "morphfit/utf8.hpp"

namespace morphfit {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == '\t' || line[i] == ' ')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != '\t' && line[i] != ' ') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

bool parse_double(const std::string& token, double& out) {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc() && ptr == token.data() + token.size() && std::isfinite(out);
}

}  // namespace

SimilarityDataset SimilarityDataset::parse(const std::string& text, bool lowercase) {
    SimilarityDataset ds;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        double score = 0.0;
        bool numeric = fields.size() >= 3 && parse_double(fields[2], score);
        if (first && !numeric) {
            first = false;
            continue;
        }
        first = false;
        if (!numeric) throw Error("dataset line " + std::to_string(line_no) + ": expected word1 word2 score");
        if (lowercase) {
            fields[0] = utf8::lowercase(fields[0]);
            fields[1] = utf8::lowercase(fields[1]);
        }
        ds.entries.push_back({fields[0], fields[1], score});
    }
    if (ds.entries.empty()) throw Error("similarity dataset is empty");
    return ds;
}

SimilarityDataset SimilarityDataset::load(const std::filesystem::path& path, bool lowercase) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open dataset file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), lowercase);
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error("spearman: length mismatch");
    if (a.size() < 2) throw Error("spearman: need at least two values");
    auto ra = average_ranks(a);
    auto rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double mean = (n + 1.0) / 2.0;  // same for any average ranking
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        double da = ra[i] - mean;
        double db = rb[i] - mean;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) throw Error("spearman: zero rank variance");
    return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

EvaluationResult evaluate(const VectorStore& store, const SimilarityDataset& dataset) {
    std::vector<double> predicted, gold;
    for (const auto& e : dataset.entries) {
        auto a = store.find(e.word1);
        auto b = store.find(e.word2);
        if (!a || !b) continue;
        predicted.push_back(store.cosine(*a, *b));
        gold.push_back(e.gold);
    }
    if (predicted.size() < 2)
        throw Error("insufficient coverage: " + std::to_string(predicted.size()) + " of " +
                    std::to_string(dataset.entries.size()) + " pairs in vocabulary");
    return {spearman(predicted, gold), predicted.size(), dataset.entries.size()};
}

std::string format_evaluation(const EvaluationResult& result) {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed << "rho=" << result.rho << " covered=" << result.covered << " total=" << result.total;
    return out.str();
}

std::vector<std::pair<std::string, double>> neighbors(const VectorStore& store, const std::string& word,
                                                      std::size_t k) {
    if (k < 1) throw Error("k must be at least 1");
    RowIndex query = store.index(word);
    const Matrix& m = store.matrix();
    const double qn = m.row(static_cast<Eigen::Index>(query)).norm();
    if (qn == 0.0) throw Error("query word has a zero vector: " + word);

    std::vector<std::pair<std::string, double>> scored;
    for (RowIndex i = 0; i < store.size(); ++i) {
        if (i == query) continue;
        double n = m.row(static_cast<Eigen::Index>(i)).norm();
        if (n == 0.0) continue;
        double c = m.row(static_cast<Eigen::Index>(i)).dot(m.row(static_cast<Eigen::Index>(query))) / (n * qn);
        scored.emplace_back(store.word(i), std::clamp(c, -1.0, 1.0));
    }
    auto by_rank = [](const auto& x, const auto& y) {
        return x.second != y.second ? x.second > y.second : x.first < y.first;
    };
    std::size_t take = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(), by_rank);
    scored.resize(take);
    return scored;
}

}  // namespace morphfit
