#include "morphfit/vector_store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "morphfit/utf8.hpp"

namespace morphfit {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

bool parse_double(std::string_view token, double& out) {
    const char* first = token.data();
    if (!token.empty() && token.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), out);
    return ec == std::errc() && ptr == token.data() + token.size();
}

bool is_integer(std::string_view token) {
    if (token.empty()) return false;
    for (char c : token)
        if (c < '0' || c > '9') return false;
    return true;
}

void check_finite(const Matrix& m) {
    if (!m.allFinite()) throw Error("vector store contains non-finite entries");
}

}  // namespace

VectorStore::VectorStore(std::vector<std::string> words, Matrix rows)
    : words_(std::move(words)), matrix_(std::move(rows)) {
    if (static_cast<Eigen::Index>(words_.size()) != matrix_.rows())
        throw Error("word count does not match row count");
    for (RowIndex i = 0; i < words_.size(); ++i) {
        if (!index_.emplace(words_[i], i).second) throw Error("duplicate word: " + words_[i]);
    }
    check_finite(matrix_);
    initial_ = matrix_;
}

VectorStore VectorStore::parse(std::string_view text, const LoadOptions& options, Warnings* warnings) {
    std::vector<std::string> words;
    std::vector<double> values;
    std::unordered_map<std::string, std::size_t> seen;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    std::optional<std::size_t> header_rows;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (line_no == 1 && tokens.size() == 2 && is_integer(tokens[0]) && is_integer(tokens[1])) {
            header_rows = std::stoul(std::string(tokens[0]));
            dim = std::stoul(std::string(tokens[1]));
            if (dim == 0) throw Error("header declares dimension 0");
            continue;
        }
        if (tokens.size() < 2) throw Error("line " + std::to_string(line_no) + ": no vector components");
        std::size_t d = tokens.size() - 1;
        if (dim == 0) dim = d;
        if (d != dim)
            throw Error("line " + std::to_string(line_no) + ": dimension " + std::to_string(d) +
                        " differs from " + std::to_string(dim));

        std::string word(tokens[0]);
        if (options.lowercase) word = utf8::lowercase(word);
        if (seen.count(word)) {
            if (warnings)
                warnings->push_back("line " + std::to_string(line_no) + ": duplicate word '" + word +
                                    "' ignored (first occurrence kept)");
            continue;
        }
        std::size_t base = values.size();
        values.resize(base + d);
        for (std::size_t k = 0; k < d; ++k) {
            if (!parse_double(tokens[k + 1], values[base + k]))
                throw Error("line " + std::to_string(line_no) + ": non-numeric token '" +
                            std::string(tokens[k + 1]) + "'");
        }
        seen.emplace(word, words.size());
        words.push_back(std::move(word));
    }
    if (header_rows && *header_rows != words.size() && warnings)
        warnings->push_back("header declares " + std::to_string(*header_rows) + " rows, read " +
                            std::to_string(words.size()));

    Matrix m(static_cast<Eigen::Index>(words.size()), static_cast<Eigen::Index>(dim));
    if (!words.empty()) m = Eigen::Map<Matrix>(values.data(), m.rows(), m.cols());
    VectorStore store(std::move(words), std::move(m));
    if (options.normalize) {
        store.normalize_rows();
        store.initial_ = store.matrix_;
    }
    return store;
}

VectorStore VectorStore::load(const std::filesystem::path& path, const LoadOptions& options, Warnings* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open vectors file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), options, warnings);
}

std::string VectorStore::to_text() const {
    if (empty()) throw Error("empty store");
    std::string out;
    char buf[32];
    for (RowIndex i = 0; i < size(); ++i) {
        out += words_[i];
        for (Eigen::Index k = 0; k < matrix_.cols(); ++k) {
            // Shortest representation that round-trips exactly.
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), matrix_(static_cast<Eigen::Index>(i), k));
            out += ' ';
            out.append(buf, ptr);
        }
        out += '\n';
    }
    return out;
}

void VectorStore::save(const std::filesystem::path& path) const {
    std::string text = to_text();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write vectors file: " + path.string());
    out << text;
    if (!out) throw Error("write failed: " + path.string());
}

std::optional<RowIndex> VectorStore::find(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

RowIndex VectorStore::index(std::string_view word) const {
    auto row = find(word);
    if (!row) throw Error("word not in vocabulary: " + std::string(word));
    return *row;
}

double VectorStore::cosine(RowIndex a, RowIndex b) const {
    auto ra = matrix_.row(static_cast<Eigen::Index>(a));
    auto rb = matrix_.row(static_cast<Eigen::Index>(b));
    double na = ra.norm();
    double nb = rb.norm();
    if (na == 0.0 || nb == 0.0) throw Error("cosine undefined for zero-norm row");
    double c = ra.dot(rb) / (na * nb);
    return std::clamp(c, -1.0, 1.0);
}

double VectorStore::cosine(std::string_view w1, std::string_view w2) const {
    return cosine(index(w1), index(w2));
}

void VectorStore::normalize_rows() {
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
        double n = matrix_.row(i).norm();
        if (n == 0.0) throw Error("zero vector cannot be normalized: " + words_[static_cast<std::size_t>(i)]);
        matrix_.row(i) /= n;
    }
}

}  // namespace morphfit
