#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "morphfit/error.hpp"

namespace morphfit {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowIndex = std::size_t;

struct LoadOptions {
    bool normalize = true;
    bool lowercase = false;
};

/// A vocabulary-indexed word vector space.
///
/// Rows follow file order. The matrix is mutable (the optimizer writes into it);
/// the initial matrix is the snapshot taken at construction and never changes.
class VectorStore {
public:
    VectorStore() = default;

    /// Builds a store from parallel word/row data. Throws on duplicate words,
    /// mismatched sizes or non-finite entries.
    VectorStore(std::vector<std::string> words, Matrix rows);

    /// Reads the whitespace-separated text format (`word v1 ... vd`, optional `n d` header).
    /// Duplicate words keep their first occurrence and add a warning.
    static VectorStore load(const std::filesystem::path& path, const LoadOptions& options = {},
                            Warnings* warnings = nullptr);
    static VectorStore parse(std::string_view text, const LoadOptions& options = {},
                             Warnings* warnings = nullptr);

    void save(const std::filesystem::path& path) const;
    std::string to_text() const;

    std::size_t size() const { return words_.size(); }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.cols()); }
    bool empty() const { return words_.empty(); }

    const std::vector<std::string>& words() const { return words_; }
    const std::string& word(RowIndex row) const { return words_.at(row); }
    std::optional<RowIndex> find(std::string_view word) const;
    bool contains(std::string_view word) const { return find(word).has_value(); }
    /// Throws `Error` for out-of-vocabulary words.
    RowIndex index(std::string_view word) const;

    const Matrix& matrix() const { return matrix_; }
    Matrix& matrix() { return matrix_; }
    const Matrix& initial_matrix() const { return initial_; }

    double cosine(std::string_view w1, std::string_view w2) const;
    double cosine(RowIndex a, RowIndex b) const;

    /// Scales every row to unit L2 norm. Throws on zero rows. Leaves the initial snapshot alone.
    void normalize_rows();

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, RowIndex> index_;
    Matrix matrix_;
    Matrix initial_;
};

}  // namespace morphfit
