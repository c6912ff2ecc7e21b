#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "morphfit/constraints.hpp"
#include "morphfit/vector_store.hpp"

namespace morphfit {

/// Hyperparameters of the Attract-Repel objective and its AdaGrad optimiser.
struct TrainingConfig {
    double delta_att = 0.6;     // attract margin
    double delta_rpl = 0.0;     // repel margin
    double lambda_reg = 1e-9;   // pull towards the initial vectors
    int epochs = 10;
    std::size_t attract_batch_size = 50;
    std::size_t repel_batch_size = 50;
    double learning_rate = 0.05;
    std::uint64_t rng_seed = 0;
    bool normalize_after = false;  // unit-normalise rows once fitting is done

    /// Throws `Error` when a field is outside its domain.
    void validate() const;
};

enum class BatchKind { attract, repel };

using IndexPair = std::pair<RowIndex, RowIndex>;

struct MiniBatch {
    BatchKind kind = BatchKind::attract;
    std::vector<IndexPair> pairs;
};

/// Sorted distinct rows referenced by the batches.
std::vector<RowIndex> batch_words(const MiniBatch& batch);
std::vector<RowIndex> batch_words(const MiniBatch& attract, const MiniBatch& repel);

/// In-batch negative for `member`: the pool word with the largest (attract) or smallest (repel)
/// dot product with it, `member` and `partner` excluded. Ties go to the lowest row.
std::optional<RowIndex> select_negative(BatchKind kind, std::span<const RowIndex> pool, RowIndex member,
                                        RowIndex partner, const Matrix& vectors);
/// Same, with the pool taken from the batch itself.
std::optional<RowIndex> select_negative(const MiniBatch& batch, RowIndex member, RowIndex partner,
                                        const VectorStore& store);

// Hinge sums. Without an explicit pool, negatives come from the batch's own words.
double attract_cost(const MiniBatch& batch, const VectorStore& store, const TrainingConfig& config);
double attract_cost(const MiniBatch& batch, const VectorStore& store, const TrainingConfig& config,
                    std::span<const RowIndex> pool);
double repel_cost(const MiniBatch& batch, const VectorStore& store, const TrainingConfig& config);
double repel_cost(const MiniBatch& batch, const VectorStore& store, const TrainingConfig& config,
                  std::span<const RowIndex> pool);

/// λ · Σ ‖x_init − x‖₂ over `words` (the norm itself, not its square).
double reg_cost(std::span<const RowIndex> words, const VectorStore& store, const TrainingConfig& config);

struct CostBreakdown {
    double attract = 0.0;
    double repel = 0.0;
    double reg = 0.0;

    double total() const { return attract + repel + reg; }
    CostBreakdown& operator+=(const CostBreakdown& other);
};

/// Full mini-batch cost. Negatives for both terms are drawn from V(B_A ∪ B_R).
CostBreakdown batch_cost(const MiniBatch& attract, const MiniBatch& repel, const VectorStore& store,
                         const TrainingConfig& config);

/// Gradient of `batch_cost` restricted to the batch rows: row `rows[i]` has gradient `values.row(i)`.
struct SparseGradient {
    std::vector<RowIndex> rows;
    Matrix values;
};

/// Negatives are selected once and held fixed; ReLU'(0) = 0. At x = x_init the regulariser
/// contributes the minimum-norm sub-gradient, so a row whose hinge gradient is no larger
/// than λ does not move.
SparseGradient gradient(const MiniBatch& attract, const MiniBatch& repel, const VectorStore& store,
                        const TrainingConfig& config);

/// Per-coordinate accumulated squared gradients.
class AdaGradState {
public:
    static constexpr double kEpsilon = 1e-8;

    AdaGradState() = default;
    AdaGradState(std::size_t rows, std::size_t dim) : accumulated_(Matrix::Zero(rows, dim)) {}

    const Matrix& accumulated() const { return accumulated_; }
    void apply(const SparseGradient& grad, Matrix& vectors, double learning_rate);

private:
    Matrix accumulated_;
};

/// One AdaGrad update on the batch rows. Returns the cost before the update.
CostBreakdown step(const MiniBatch& attract, const MiniBatch& repel, VectorStore& store, AdaGradState& state,
                   const TrainingConfig& config);

struct EpochCost {
    int epoch = 0;
    CostBreakdown cost;  // summed over the epoch's steps, measured before each update
};

struct FitResult {
    VectorStore store;
    std::vector<EpochCost> log;
    std::size_t dropped_pairs = 0;
};

/// Fine-tunes a copy of `store`. Pairs naming out-of-vocabulary words are dropped with a warning.
/// Each epoch reshuffles both lists; the list needing fewer batches is recycled.
FitResult fit(const VectorStore& store, const ConstraintSet& constraints, const TrainingConfig& config,
              Warnings* warnings = nullptr);

std::string format_cost_log(const std::vector<EpochCost>& log);

}  // namespace morphfit
