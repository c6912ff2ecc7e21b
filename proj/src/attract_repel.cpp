#include "morphfit/attract_repel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

namespace morphfit {

namespace {

double relu(double x) { return x > 0.0 ? x : 0.0; }

auto row(const Matrix& m, RowIndex i) { return m.row(static_cast<Eigen::Index>(i)); }

double dot(const Matrix& m, RowIndex a, RowIndex b) { return row(m, a).dot(row(m, b)); }

void check_kind(const MiniBatch& batch, BatchKind expected) {
    if (batch.kind != expected && !batch.pairs.empty())
        throw Error(expected == BatchKind::attract ? "expected an attract batch" : "expected a repel batch");
}

// Hinge terms of one pair, with the negatives that produced them.
struct PairTerms {
    std::optional<RowIndex> neg_left, neg_right;
    double left = 0.0, right = 0.0;  // hinge arguments, before ReLU
};

PairTerms pair_terms(BatchKind kind, const IndexPair& pair, std::span<const RowIndex> pool, const Matrix& x,
                     const TrainingConfig& config) {
    auto [l, r] = pair;
    PairTerms t;
    t.neg_left = select_negative(kind, pool, l, r, x);
    t.neg_right = select_negative(kind, pool, r, l, x);
    const double lr = dot(x, l, r);
    if (kind == BatchKind::attract) {
        if (t.neg_left) t.left = config.delta_att + dot(x, l, *t.neg_left) - lr;
        if (t.neg_right) t.right = config.delta_att + dot(x, r, *t.neg_right) - lr;
    } else {
        if (t.neg_left) t.left = config.delta_rpl + lr - dot(x, l, *t.neg_left);
        if (t.neg_right) t.right = config.delta_rpl + lr - dot(x, r, *t.neg_right);
    }
    return t;
}

double hinge_sum(const MiniBatch& batch, BatchKind kind, const VectorStore& store, const TrainingConfig& config,
                 std::span<const RowIndex> pool) {
    check_kind(batch, kind);
    double total = 0.0;
    for (const auto& pair : batch.pairs) {
        auto t = pair_terms(kind, pair, pool, store.matrix(), config);
        if (t.neg_left) total += relu(t.left);
        if (t.neg_right) total += relu(t.right);
    }
    return total;
}

}  // namespace

void TrainingConfig::validate() const {
    if (!(delta_att >= 0.0) || !(delta_rpl >= 0.0)) throw Error("margins must be non-negative");
    if (!(lambda_reg >= 0.0)) throw Error("lambda_reg must be non-negative");
    if (epochs < 1) throw Error("epochs must be positive");
    if (attract_batch_size < 1 || repel_batch_size < 1) throw Error("batch sizes must be at least 1");
    if (!(learning_rate > 0.0)) throw Error("learning rate must be positive");
}

CostBreakdown& CostBreakdown::operator+=(const CostBreakdown& other) {
    attract += other.attract;
    repel += other.repel;
    reg += other.reg;
    return *this;
}

std::vector<RowIndex> batch_words(const MiniBatch& batch) {
    std::vector<RowIndex> words;
    for (auto [l, r] : batch.pairs) {
        words.push_back(l);
        words.push_back(r);
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

std::vector<RowIndex> batch_words(const MiniBatch& attract, const MiniBatch& repel) {
    auto a = batch_words(attract);
    auto r = batch_words(repel);
    std::vector<RowIndex> words;
    std::set_union(a.begin(), a.end(), r.begin(), r.end(), std::back_inserter(words));
    return words;
}

std::optional<RowIndex> select_negative(BatchKind kind, std::span<const RowIndex> pool, RowIndex member,
                                        RowIndex partner, const Matrix& vectors) {
    std::optional<RowIndex> best;
    double best_dot = 0.0;
    for (RowIndex candidate : pool) {
        if (candidate == member || candidate == partner) continue;
        double d = dot(vectors, member, candidate);
        bool better = !best || (kind == BatchKind::attract ? d > best_dot : d < best_dot) ||
                      (d == best_dot && candidate < *best);
        if (better) {
            best = candidate;
            best_dot = d;
        }
    }
    return best;
}

std::optional<RowIndex> select_negative(const MiniBatch& batch, RowIndex member, RowIndex partner,
                                        const VectorStore& store) {
    return select_negative(batch.kind, batch_words(batch), member, partner, store.matrix());
}

double attract_cost(const MiniBatch& batch, const VectorStore& store, const TrainingConfig& config) {
    return attract_cost(batch, store, config, batch_words(batch));
}

double attract_cost(const MiniBatch& batch, const VectorStore& store, const TrainingConfig& config,
                    std::span<const RowIndex> pool) {
    return hinge_sum(batch, BatchKind::attract, store, config, pool);
}

double repel_cost(const MiniBatch& batch, const VectorStore& store, const TrainingConfig& config) {
    return repel_cost(batch, store, config, batch_words(batch));
}

double repel_cost(const MiniBatch& batch, const VectorStore& store, const TrainingConfig& config,
                  std::span<const RowIndex> pool) {
    return hinge_sum(batch, BatchKind::repel, store, config, pool);
}

double reg_cost(std::span<const RowIndex> words, const VectorStore& store, const TrainingConfig& config) {
    double total = 0.0;
    for (RowIndex w : words) total += (row(store.initial_matrix(), w) - row(store.matrix(), w)).norm();
    return config.lambda_reg * total;
}

CostBreakdown batch_cost(const MiniBatch& attract, const MiniBatch& repel, const VectorStore& store,
                         const TrainingConfig& config) {
    auto pool = batch_words(attract, repel);
    return {attract_cost(attract, store, config, pool), repel_cost(repel, store, config, pool),
            reg_cost(pool, store, config)};
}

SparseGradient gradient(const MiniBatch& attract, const MiniBatch& repel, const VectorStore& store,
                        const TrainingConfig& config) {
    check_kind(attract, BatchKind::attract);
    check_kind(repel, BatchKind::repel);
    const Matrix& x = store.matrix();
    SparseGradient g;
    g.rows = batch_words(attract, repel);
    g.values = Matrix::Zero(static_cast<Eigen::Index>(g.rows.size()), x.cols());
    auto at = [&](RowIndex r) {
        auto it = std::lower_bound(g.rows.begin(), g.rows.end(), r);
        return g.values.row(it - g.rows.begin());
    };

    for (const auto& pair : attract.pairs) {
        auto [l, r] = pair;
        auto t = pair_terms(BatchKind::attract, pair, g.rows, x, config);
        if (t.neg_left && t.left > 0.0) {  // δ + x_l·t_l − x_l·x_r
            at(l) += row(x, *t.neg_left) - row(x, r);
            at(*t.neg_left) += row(x, l);
            at(r) -= row(x, l);
        }
        if (t.neg_right && t.right > 0.0) {  // δ + x_r·t_r − x_l·x_r
            at(r) += row(x, *t.neg_right) - row(x, l);
            at(*t.neg_right) += row(x, r);
            at(l) -= row(x, r);
        }
    }
    for (const auto& pair : repel.pairs) {
        auto [l, r] = pair;
        auto t = pair_terms(BatchKind::repel, pair, g.rows, x, config);
        if (t.neg_left && t.left > 0.0) {  // δ + x_l·x_r − x_l·t_l
            at(l) += row(x, r) - row(x, *t.neg_left);
            at(r) += row(x, l);
            at(*t.neg_left) -= row(x, l);
        }
        if (t.neg_right && t.right > 0.0) {  // δ + x_l·x_r − x_r·t_r
            at(l) += row(x, r);
            at(r) += row(x, l) - row(x, *t.neg_right);
            at(*t.neg_right) -= row(x, r);
        }
    }

    if (config.lambda_reg > 0.0) {
        for (std::size_t i = 0; i < g.rows.size(); ++i) {
            auto gi = g.values.row(static_cast<Eigen::Index>(i));
            Vector displacement = (row(x, g.rows[i]) - row(store.initial_matrix(), g.rows[i])).transpose();
            double norm = displacement.norm();
            if (norm > 0.0) {
                gi += (config.lambda_reg / norm) * displacement.transpose();
            } else {
                // minimum-norm element of g + λ·B(0, 1)
                double hinge_norm = gi.norm();
                if (hinge_norm <= config.lambda_reg)
                    gi.setZero();
                else
                    gi *= 1.0 - config.lambda_reg / hinge_norm;
            }
        }
    }
    return g;
}

void AdaGradState::apply(const SparseGradient& grad, Matrix& vectors, double learning_rate) {
    if (accumulated_.rows() != vectors.rows() || accumulated_.cols() != vectors.cols())
        throw Error("optimizer state does not match the vector store");
    for (std::size_t i = 0; i < grad.rows.size(); ++i) {
        auto r = static_cast<Eigen::Index>(grad.rows[i]);
        auto g = grad.values.row(static_cast<Eigen::Index>(i));
        for (Eigen::Index k = 0; k < g.size(); ++k) {
            if (g(k) == 0.0) continue;
            accumulated_(r, k) += g(k) * g(k);
            vectors(r, k) -= learning_rate * g(k) / std::sqrt(accumulated_(r, k) + kEpsilon);
        }
    }
}

CostBreakdown step(const MiniBatch& attract, const MiniBatch& repel, VectorStore& store, AdaGradState& state,
                   const TrainingConfig& config) {
    CostBreakdown before = batch_cost(attract, repel, store, config);
    state.apply(gradient(attract, repel, store, config), store.matrix(), config.learning_rate);
    return before;
}

namespace {

// Walks a shuffled pair list; reshuffles whenever it wraps.
class PairCursor {
public:
    PairCursor(std::vector<IndexPair> pairs, std::size_t batch_size)
        : pairs_(std::move(pairs)), batch_size_(batch_size) {}

    std::size_t batches_per_pass() const { return (pairs_.size() + batch_size_ - 1) / batch_size_; }

    void reshuffle(std::mt19937_64& rng) {
        std::shuffle(pairs_.begin(), pairs_.end(), rng);
        pos_ = 0;
    }

    MiniBatch next(BatchKind kind, std::mt19937_64& rng) {
        MiniBatch batch{kind, {}};
        if (pairs_.empty()) return batch;
        if (pos_ == pairs_.size()) reshuffle(rng);
        std::size_t end = std::min(pairs_.size(), pos_ + batch_size_);
        batch.pairs.assign(pairs_.begin() + static_cast<std::ptrdiff_t>(pos_),
                           pairs_.begin() + static_cast<std::ptrdiff_t>(end));
        pos_ = end;
        return batch;
    }

private:
    std::vector<IndexPair> pairs_;
    std::size_t batch_size_;
    std::size_t pos_ = 0;
};

std::vector<IndexPair> to_indices(const PairList& pairs, const VectorStore& store, std::size_t& dropped) {
    std::vector<IndexPair> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        auto ia = store.find(a);
        auto ib = store.find(b);
        if (!ia || !ib || *ia == *ib) {
            ++dropped;
            continue;
        }
        out.emplace_back(*ia, *ib);
    }
    return out;
}

}  // namespace

FitResult fit(const VectorStore& store, const ConstraintSet& constraints, const TrainingConfig& config,
              Warnings* warnings) {
    config.validate();
    if (store.empty() || store.dim() == 0) throw Error("cannot fit an empty or zero-dimensional store");

    FitResult result{store, {}, 0};
    PairCursor attract(to_indices(constraints.attract, store, result.dropped_pairs), config.attract_batch_size);
    PairCursor repel(to_indices(constraints.repel, store, result.dropped_pairs), config.repel_batch_size);
    if (result.dropped_pairs && warnings)
        warnings->push_back(std::to_string(result.dropped_pairs) + " constraint pairs dropped (word not in vectors)");
    if (attract.batches_per_pass() == 0 && repel.batches_per_pass() == 0) throw Error("empty constraint set");

    std::mt19937_64 rng(config.rng_seed);
    AdaGradState state(store.size(), store.dim());
    const std::size_t steps = std::max(attract.batches_per_pass(), repel.batches_per_pass());
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        attract.reshuffle(rng);
        repel.reshuffle(rng);
        EpochCost entry{epoch, {}};
        for (std::size_t s = 0; s < steps; ++s) {
            MiniBatch a = attract.next(BatchKind::attract, rng);
            MiniBatch r = repel.next(BatchKind::repel, rng);
            entry.cost += step(a, r, result.store, state, config);
        }
        result.log.push_back(entry);
    }
    if (config.normalize_after) result.store.normalize_rows();
    return result;
}

std::string format_cost_log(const std::vector<EpochCost>& log) {
    std::ostringstream out;
    out.precision(10);
    out << "epoch\tattract\trepel\treg\ttotal\n";
    for (const auto& e : log)
        out << e.epoch << '\t' << e.cost.attract << '\t' << e.cost.repel << '\t' << e.cost.reg << '\t'
            << e.cost.total() << '\n';
    return out.str();
}

}  // namespace morphfit
