#include <gtest/gtest.h>

#include <random>

#include "flavorrec/content.hpp"
#include "flavorrec/error.hpp"
#include "flavorrec/flavor.hpp"
#include "support/test_support.hpp"

using namespace flavorrec;

TEST(AggregatePreference, WeightedMean) {
    const std::vector<WeightedScore> n = {{0.5, 5}, {0.25, 1}, {0.25, 3}};
    EXPECT_NEAR(aggregate_preference(n).score, (2.5 + 0.25 + 0.75), 1e-12);
    const std::vector<WeightedScore> m = {{0.8, 4}, {0.4, 2}};
    // (3.2 + 0.8) / 1.2
    EXPECT_NEAR(aggregate_preference(m).score, 3.333333, 1e-6);
    EXPECT_FALSE(aggregate_preference(m).fallback);
}

TEST(AggregatePreference, SingleNeighbourReturnsItsScore) {
    for (double sim : {0.01, 0.3, 1.0})
        for (int score = 1; score <= 5; ++score) {
            const std::vector<WeightedScore> n = {{sim, static_cast<double>(score)}};
            EXPECT_DOUBLE_EQ(aggregate_preference(n).score, score);
        }
}

TEST(AggregatePreference, AllZeroSimilarityFallsBackToMean) {
    const std::vector<WeightedScore> n = {{0, 5}, {0, 2}, {0, 2}};
    const auto p = aggregate_preference(n);
    EXPECT_TRUE(p.fallback);
    EXPECT_DOUBLE_EQ(p.score, 3.0);
    EXPECT_THROW(aggregate_preference({}), ColdStartError);
}

TEST(AggregatePreference, PropertyScaleInvariantAndBounded) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> sim(0, 1);
    std::uniform_int_distribution<int> score(1, 5);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<WeightedScore> n(1 + rng() % 10), scaled;
        for (auto& x : n) x = {sim(rng), static_cast<double>(score(rng))};
        for (auto x : n) scaled.push_back({x.similarity * 8, x.score});
        const auto p = aggregate_preference(n);
        EXPECT_NEAR(aggregate_preference(scaled).score, p.score, 1e-12);
        EXPECT_GE(p.score, 1.0);
        EXPECT_LE(p.score, 5.0);
    }
}

TEST(PredictContent, UsesTheIndex) {
    const auto items = flavorrec::testing::load_sample_foods();
    const auto v = build_vocabulary(items);
    const auto profiles = flavor_profiles(items);
    const auto plain = build_index(items, v);
    const auto flavored = build_index(items, v, &profiles);
    const std::vector<Rating> history = {{"u", "rajma", 5}, {"u", "masala_dosa", 1}};

    std::vector<WeightedScore> n;
    for (const auto& r : history)
        n.push_back({similarity(plain.at("channa_masala"), plain.at(r.dish_id), SimilarityMode::tags_only()),
                     static_cast<double>(r.score)});
    EXPECT_DOUBLE_EQ(predict_content(history, "channa_masala", plain, SimilarityMode::tags_only()).score,
                     aggregate_preference(n).score);

    const auto p = predict_content(history, "channa_masala", flavored, SimilarityMode::blended());
    EXPECT_GE(p.score, 1.0);
    EXPECT_LE(p.score, 5.0);
    EXPECT_THROW(predict_content({}, "rajma", plain, SimilarityMode::tags_only()), ColdStartError);
    EXPECT_THROW(predict_content(history, "nope", plain, SimilarityMode::tags_only()), NotFound);
}
