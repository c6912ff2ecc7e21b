#include <doctest.h>

#include <random>

#include "morphfit/attract_repel.hpp"
#include "optimizer_oracle.hpp"
#include "test_support.hpp"

using namespace morphfit;
using namespace morphfit::testing;

namespace {

// a=(1,0) b=(1,0) c=(0,1) d=(1,0)
VectorStore four() { return make_store({"a", "b", "c", "d"}, {{1, 0}, {1, 0}, {0, 1}, {1, 0}}); }

MiniBatch attract_batch(std::vector<IndexPair> p) { return {BatchKind::attract, std::move(p)}; }
MiniBatch repel_batch(std::vector<IndexPair> p) { return {BatchKind::repel, std::move(p)}; }

}  // namespace

TEST_CASE("select_negative") {
    auto s = four();
    auto batch = attract_batch({{0, 1}, {2, 3}});
    CHECK(select_negative(batch, 0, 1, s) == RowIndex{3});
    CHECK_FALSE(select_negative(attract_batch({{0, 1}}), 0, 1, s).has_value());
    // repel: c is orthogonal to a and b, so both dots are 0; the lower row wins
    CHECK(select_negative(repel_batch({{0, 1}, {2, 3}}), 2, 3, s) == RowIndex{0});
}

TEST_CASE("attract_cost examples") {
    TrainingConfig cfg;
    auto aligned = make_store({"a", "b", "c", "d"}, {{1, 0}, {1, 0}, {0, 1}, {0, 1}});
    CHECK(attract_cost(attract_batch({{0, 1}, {2, 3}}), aligned, cfg) == 0.0);
    auto s = four();
    CHECK(attract_cost(attract_batch({{0, 1}, {2, 3}}), s, cfg) == doctest::Approx(3.4).epsilon(1e-12));
    CHECK(attract_cost(attract_batch({{0, 2}}), s, cfg) == 0.0);
}

TEST_CASE("repel_cost examples") {
    TrainingConfig cfg;
    auto separated = make_store({"a", "b", "c", "d"}, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    CHECK(repel_cost(repel_batch({{0, 1}, {2, 3}}), separated, cfg) == 0.0);
    auto same = make_store({"a", "b", "c", "d"}, {{1, 0}, {1, 0}, {0, 1}, {0, 1}});
    CHECK(repel_cost(repel_batch({{0, 1}, {2, 3}}), same, cfg) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(repel_cost(repel_batch({{0, 1}}), same, cfg) == 0.0);
}

TEST_CASE("reg_cost examples") {
    TrainingConfig cfg;
    auto s = make_store({"a", "b"}, {{0, 0}, {1, 1}});
    std::vector<RowIndex> both = {0, 1};
    CHECK(reg_cost(both, s, cfg) == 0.0);
    cfg.lambda_reg = 1.0;
    s.matrix().row(0) << 3, 4;
    CHECK(reg_cost(both, s, cfg) == doctest::Approx(5.0));
    cfg.lambda_reg = 1e-9;
    s.matrix().row(0) << 1, 0;
    s.matrix().row(1) << 1, 2;
    CHECK(std::abs(reg_cost(both, s, cfg) - 2e-9) <= 1e-15);
}

TEST_CASE("cost functions equal the brute-force oracle") {
    std::mt19937_64 rng(99);
    TrainingConfig cfg;
    cfg.delta_rpl = 0.2;
    std::uniform_int_distribution<int> small(-2, 2);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 4 + trial % 4, d = 1 + trial % 4;
        // small integer coordinates so ties happen often
        Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = small(rng);
        std::vector<std::string> words;
        for (std::size_t i = 0; i < n; ++i) words.push_back("w" + std::to_string(i));
        VectorStore s(words, m);
        auto a = random_batch(BatchKind::attract, n, 4, rng);
        auto r = random_batch(BatchKind::repel, n, 4, rng);
        auto rows = to_rows(m);

        CHECK(attract_cost(a, s, cfg) == oracle_hinge_cost(a, rows, oracle_words(a, {}), cfg.delta_att));
        CHECK(repel_cost(r, s, cfg) == oracle_hinge_cost(r, rows, oracle_words(r, {}), cfg.delta_rpl));
        auto both = batch_cost(a, r, s, cfg);
        auto pool = oracle_words(a, r);
        CHECK(both.attract == oracle_hinge_cost(a, rows, pool, cfg.delta_att));
        CHECK(both.repel == oracle_hinge_cost(r, rows, pool, cfg.delta_rpl));
        CHECK(both.attract >= 0.0);
        CHECK(both.repel >= 0.0);
        CHECK(both.reg >= 0.0);
    }
}

TEST_CASE("attract cost is zero exactly when every margin is met") {
    std::mt19937_64 rng(5);
    TrainingConfig cfg;
    int zero = 0, positive = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto s = random_store(6, 3, rng);
        auto a = random_batch(BatchKind::attract, 6, 3, rng);
        auto rows = to_rows(s.matrix());
        bool all_met = true;
        for (const auto& side : oracle_sides(a, rows, oracle_words(a, {}), cfg.delta_att))
            if (side.has_negative && side.argument > 0.0) all_met = false;
        double cost = attract_cost(a, s, cfg);
        CHECK((cost == 0.0) == all_met);
        (cost == 0.0 ? zero : positive)++;
    }
    CHECK(zero > 0);
    CHECK(positive > 0);
}

TEST_CASE("analytic gradient matches central differences") {
    std::mt19937_64 rng(1234);
    TrainingConfig cfg;
    cfg.lambda_reg = 0.05;
    cfg.delta_rpl = 0.1;
    int checked = 0;
    for (int attempt = 0; checked < 60 && attempt < 5000; ++attempt) {
        auto s = random_store(5, 4, rng);
        // move away from the initial point so the regulariser is differentiable
        s.matrix() += 0.1 * random_store(5, 4, rng).matrix();
        auto a = random_batch(BatchKind::attract, 5, 3, rng);
        auto r = random_batch(BatchKind::repel, 5, 3, rng);
        auto rows = to_rows(s.matrix());
        auto pool = oracle_words(a, r);
        bool smooth = true;
        for (const auto* b : {&a, &r})
            for (const auto& side : oracle_sides(*b, rows, pool, b == &a ? cfg.delta_att : cfg.delta_rpl))
                if (side.has_negative && (std::abs(side.argument) < 1e-3 || side.gap < 1e-3)) smooth = false;
        if (!smooth) continue;

        auto g = gradient(a, r, s, cfg);
        auto fd = central_differences(s, g.rows, [&] { return batch_cost(a, r, s, cfg).total(); });
        double scale = std::max(fd.norm(), 1e-12);
        CHECK((g.values - fd).norm() / scale <= 1e-4);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("zero-cost batches leave the store untouched") {
    auto s = make_store({"a", "b", "c", "d"}, {{1, 0}, {1, 0}, {0, 1}, {0, 1}});
    TrainingConfig cfg;
    AdaGradState state(4, 2);
    auto before = s.matrix();
    auto cost = step(attract_batch({{0, 1}, {2, 3}}), repel_batch({}), s, state, cfg);
    CHECK(cost.total() == 0.0);
    CHECK(s.matrix() == before);
}

TEST_CASE("one step lowers the 3.4 attract cost") {
    auto s = four();
    TrainingConfig cfg;
    AdaGradState state(4, 2);
    auto batch = attract_batch({{0, 1}, {2, 3}});
    const Matrix initial = s.initial_matrix();
    double before = attract_cost(batch, s, cfg);
    step(batch, repel_batch({}), s, state, cfg);
    CHECK(attract_cost(batch, s, cfg) < before);
    CHECK(s.initial_matrix() == initial);
    CHECK(state.accumulated().sum() > 0.0);
}

TEST_CASE("regulariser at the initial point uses the minimum-norm sub-gradient") {
    auto s = four();
    TrainingConfig cfg;
    auto batch = attract_batch({{0, 1}, {2, 3}});
    auto plain = gradient(batch, repel_batch({}), s, TrainingConfig{.lambda_reg = 0.0});
    cfg.lambda_reg = 1e3;
    auto damped = gradient(batch, repel_batch({}), s, cfg);
    CHECK(damped.values.isZero());
    cfg.lambda_reg = 0.5;
    auto shrunk = gradient(batch, repel_batch({}), s, cfg);
    for (Eigen::Index i = 0; i < plain.values.rows(); ++i) {
        double n = plain.values.row(i).norm();
        double expected = n <= 0.5 ? 0.0 : n - 0.5;
        CHECK(shrunk.values.row(i).norm() == doctest::Approx(expected));
    }
}

TEST_CASE("fit rejects empty constraints and bad configs") {
    auto s = four();
    TrainingConfig cfg;
    CHECK_THROWS_AS(fit(s, {}, cfg), Error);
    CHECK_THROWS_AS(fit(s, {{{"x", "y"}}, {}}, cfg), Error);  // everything dropped
    cfg.epochs = 0;
    CHECK_THROWS_AS(fit(s, {{{"a", "b"}}, {}}, cfg), Error);
    CHECK_THROWS_AS(fit(VectorStore{}, {{{"a", "b"}}, {}}, TrainingConfig{}), Error);
}

TEST_CASE("fit on the synthetic six-word space") {
    auto s = synthetic_six();
    Warnings warnings;
    auto c = synthetic_six_constraints();
    c.attract.push_back({"w1", "unknown"});
    auto result = fit(s, c, TrainingConfig{}, &warnings);
    CHECK(result.dropped_pairs == 1);
    CHECK(warnings.size() == 1);
    CHECK(result.log.size() == 10);
    CHECK(result.store.cosine("w1", "w2") > s.cosine("w1", "w2"));
    CHECK(result.store.cosine("w3", "w4") < s.cosine("w3", "w4"));
    for (Eigen::Index i : {4, 5}) CHECK(result.store.matrix().row(i) == s.matrix().row(i));
    CHECK(result.store.initial_matrix() == s.initial_matrix());
    CHECK(s.matrix() == s.initial_matrix());  // input untouched

    auto again = fit(s, c, TrainingConfig{});
    CHECK(again.store.matrix() == result.store.matrix());
}

TEST_CASE("fit recycles the shorter list and honours the seed") {
    std::mt19937_64 rng(8);
    auto s = random_store(12, 5, rng);
    ConstraintSet c;
    for (int i = 0; i < 10; ++i) {
        c.attract.push_back({"w" + std::to_string(i), "w" + std::to_string(i + 1)});
        c.attract.push_back({"w" + std::to_string(i + 1), "w" + std::to_string(i)});
    }
    c.repel = {{"w0", "w11"}, {"w11", "w0"}};
    TrainingConfig cfg;
    cfg.attract_batch_size = 4;
    cfg.repel_batch_size = 4;
    cfg.epochs = 3;
    auto a = fit(s, c, cfg);
    for (const auto& e : a.log) CHECK(e.cost.total() >= 0.0);
    cfg.rng_seed = 1;
    auto b = fit(s, c, cfg);
    CHECK(a.store.matrix() != b.store.matrix());
    cfg.normalize_after = true;
    auto n = fit(s, c, cfg);
    for (Eigen::Index i = 0; i < n.store.matrix().rows(); ++i) CHECK(n.store.matrix().row(i).norm() == doctest::Approx(1.0));
}

TEST_CASE("a dominating regulariser holds every vector in place") {
    auto s = synthetic_six();
    TrainingConfig cfg;
    cfg.lambda_reg = 1e3;
    cfg.delta_att = 0.0;
    cfg.delta_rpl = 0.0;
    auto result = fit(s, synthetic_six_constraints(), cfg);
    for (Eigen::Index i = 0; i < s.matrix().rows(); ++i)
        CHECK((result.store.matrix().row(i) - s.matrix().row(i)).norm() <= 1e-3);
}

TEST_CASE("cost log format") {
    std::vector<EpochCost> log = {{1, {1.0, 2.0, 0.5}}};
    CHECK(format_cost_log(log) == "epoch\tattract\trepel\treg\ttotal\n1\t1\t2\t0.5\t3.5\n");
}
