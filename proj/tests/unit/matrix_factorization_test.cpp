#include <gtest/gtest.h>

#include <random>

#include "flavorrec/error.hpp"
#include "flavorrec/matrix_factorization.hpp"

using namespace flavorrec;

namespace {

LatentFactors tiny(std::vector<double> p, std::vector<double> q) {
    LatentFactors f({{"u", 0}}, {{"i", 0}}, p.size());
    std::copy(p.begin(), p.end(), f.user_row(0).begin());
    std::copy(q.begin(), q.end(), f.item_row(0).begin());
    return f;
}

std::vector<Observation> rank_one(std::size_t users, std::size_t items, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pu(1, 2), qi(1, 2.5), coin(0, 1);
    std::vector<double> p(users), q(items);
    for (auto& x : p) x = pu(rng);
    for (auto& x : q) x = qi(rng);
    std::vector<Observation> cells;
    for (std::size_t u = 0; u < users; ++u)
        for (std::size_t i = 0; i < items; ++i)
            if (coin(rng) < density) cells.push_back({"u" + std::to_string(u), "i" + std::to_string(i), p[u] * q[i]});
    return cells;
}

}  // namespace

TEST(PredictMf, DotProductClampedToScale) {
    EXPECT_DOUBLE_EQ(predict_mf(tiny({1, 0}, {3, 0}), "u", "i"), 3.0);
    EXPECT_DOUBLE_EQ(dot_mf(tiny({2, 2}, {2, 2}), "u", "i"), 8.0);
    EXPECT_DOUBLE_EQ(predict_mf(tiny({2, 2}, {2, 2}), "u", "i"), 5.0);
    EXPECT_DOUBLE_EQ(predict_mf(tiny({0.1, 0}, {0.1, 0}), "u", "i"), 1.0);
    EXPECT_THROW(predict_mf(tiny({1}, {1}), "nobody", "i"), NotFound);
    EXPECT_THROW(predict_mf(tiny({1}, {1}), "u", "nothing"), NotFound);
}

TEST(TrainMf, SingleRatingWithoutRegularisationIsFitted) {
    const std::vector<Rating> ratings = {{"u", "i", 4}};
    MfConfig c;
    c.factors = 1;
    c.regularization = 0;
    c.learning_rate = 0.05;
    c.init_scale = 0.5;
    c.epochs = 2000;
    const auto r = train_mf(ratings, c);
    EXPECT_NEAR(dot_mf(r.factors, "u", "i"), 4.0, 1e-6);
    EXPECT_LT(r.history.back().rmse, 1e-6);
    EXPECT_EQ(r.history.size(), 2000u);
    EXPECT_EQ(r.history.front().epoch, 1u);
}

TEST(TrainMf, DeterministicForSeed) {
    const auto cells = rank_one(20, 30, 0.3, 1);
    MfConfig c;
    c.factors = 3;
    c.epochs = 20;
    const auto a = train_mf(cells, c);
    const auto b = train_mf(cells, c);
    EXPECT_EQ(a.factors, b.factors);
    c.seed = 43;
    EXPECT_NE(train_mf(cells, c).factors, a.factors);
}

TEST(TrainMf, ModelShape) {
    const std::vector<Rating> ratings = {{"b", "x", 3}, {"a", "y", 4}, {"a", "x", 5}};
    MfConfig c;
    c.factors = 4;
    c.epochs = 1;
    const auto r = train_mf(ratings, c);
    EXPECT_EQ(r.factors.k(), 4u);
    EXPECT_EQ(r.factors.user_count(), 2u);
    EXPECT_EQ(r.factors.item_count(), 2u);
    EXPECT_EQ(r.factors.user_factors().size(), 8u);
    EXPECT_EQ(r.factors.item_factors().size(), 8u);
}

TEST(TrainMf, InitialisationIsBounded) {
    const std::vector<Rating> ratings = {{"a", "x", 3}};
    MfConfig c;
    c.epochs = 1;
    c.learning_rate = 1e-12;
    const auto r = train_mf(ratings, c);
    for (double v : r.factors.user_factors()) EXPECT_LE(std::abs(v), 0.05 + 1e-9);
    for (double v : r.factors.item_factors()) EXPECT_LE(std::abs(v), 0.05 + 1e-9);
}

TEST(TrainMf, RejectsInvalidHyperparameters) {
    const std::vector<Rating> ratings = {{"a", "x", 3}};
    auto with = [](auto edit) {
        MfConfig c;
        edit(c);
        return c;
    };
    EXPECT_THROW(train_mf(ratings, with([](MfConfig& c) { c.factors = 0; })), InvalidArgument);
    EXPECT_THROW(train_mf(ratings, with([](MfConfig& c) { c.epochs = 0; })), InvalidArgument);
    EXPECT_THROW(train_mf(ratings, with([](MfConfig& c) { c.learning_rate = 0; })), InvalidArgument);
    EXPECT_THROW(train_mf(ratings, with([](MfConfig& c) { c.learning_rate = -0.1; })), InvalidArgument);
    EXPECT_THROW(train_mf(ratings, with([](MfConfig& c) { c.regularization = -1; })), InvalidArgument);
    EXPECT_THROW(train_mf(std::span<const Rating>{}), InvalidArgument);
}

TEST(TrainMf, ObjectiveDecreasesAtCheckpoints) {
    const auto cells = rank_one(40, 60, 0.2, 2);
    MfConfig c;
    c.factors = 2;
    c.epochs = 100;
    c.learning_rate = 0.02;
    c.regularization = 0.01;
    c.init_scale = 0.5;
    const auto r = train_mf(cells, c);
    for (std::size_t e = 19; e < r.history.size(); e += 10)
        EXPECT_LE(r.history[e].objective, r.history[e - 10].objective) << "epoch " << e + 1;
    const auto stats = mf_fit_stats(r.factors, cells, c.regularization);
    EXPECT_NEAR(stats.objective, r.history.back().objective, 1e-9 * stats.objective);
    EXPECT_NEAR(stats.rmse, r.history.back().rmse, 1e-12);
}

TEST(MfFitStats, HandComputed) {
    const auto f = tiny({1, 2}, {3, 1});
    const std::vector<Observation> cells = {{"u", "i", 4.0}};
    const auto s = mf_fit_stats(f, cells, 0.1);
    // prediction 5, error -1; penalty 0.1 * (5 + 10)
    EXPECT_DOUBLE_EQ(s.rmse, 1.0);
    EXPECT_DOUBLE_EQ(s.objective, 1.0 + 0.1 * 15);
    const std::vector<Observation> outside = {{"v", "i", 4.0}};
    EXPECT_THROW(mf_fit_stats(f, outside, 0.1), NotFound);
}
