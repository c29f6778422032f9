#include <gtest/gtest.h>

#include "flavorrec/error.hpp"
#include "flavorrec/flavor.hpp"
#include "flavorrec/ranking.hpp"
#include "support/test_support.hpp"

using namespace flavorrec;

namespace {

struct World {
    std::vector<FoodItem> items = flavorrec::testing::load_sample_foods();
    TagVocabulary vocab = build_vocabulary(items);
    ProfileMap profiles = flavor_profiles(items);
    DishIndex tags = build_index(items, vocab);
    DishIndex flavors = build_index(items, vocab, &profiles);
    std::vector<Rating> ratings = load_ratings(flavorrec::testing::data_dir() / "sample_ratings.csv").ratings;

    RecommendationInputs inputs(const LatentFactors* f = nullptr) const {
        return {items, ratings, &tags, &flavors, SimilarityMode::blended(), f};
    }
};

}  // namespace

TEST(RankAndTruncate, TiesGoToLowerId) {
    std::vector<ScoredDish> d = {{"b", 4.2}, {"a", 4.2}, {"c", 5}, {"d", 1}};
    rank_and_truncate(d, 3);
    EXPECT_EQ(d, (std::vector<ScoredDish>{{"c", 5}, {"a", 4.2}, {"b", 4.2}}));
    rank_and_truncate(d, 10);
    EXPECT_EQ(d.size(), 3u);
}

TEST(RecommendTopN, ExcludesRatedDishes) {
    const World w;
    for (Method m : {Method::tfidf, Method::tfidf_flavor}) {
        const auto recs = recommend_top_n("u001", m, 100, w.inputs());
        EXPECT_EQ(recs.size(), 10u);  // 25 dishes, 15 rated
        for (const auto& r : recs) {
            for (const auto& rated : w.ratings) EXPECT_NE(r.dish_id, rated.dish_id);
            EXPECT_GE(r.score, 1.0);
            EXPECT_LE(r.score, 5.0);
        }
        EXPECT_TRUE(std::is_sorted(recs.begin(), recs.end(),
                                   [](const ScoredDish& a, const ScoredDish& b) { return a.score > b.score; }));
        EXPECT_EQ(recommend_top_n("u001", m, 3, w.inputs()).size(), 3u);
    }
}

TEST(RecommendTopN, UserWhoRatedEverythingGetsNothing) {
    World w;
    w.ratings.clear();
    for (const auto& item : w.items) w.ratings.push_back({"all", item.id, 3});
    EXPECT_TRUE(recommend_top_n("all", Method::tfidf, 5, w.inputs()).empty());
}

TEST(RecommendTopN, ColdStart) {
    const World w;
    EXPECT_THROW(recommend_top_n("ghost", Method::tfidf, 5, w.inputs()), ColdStartError);
    const auto mf = train_mf(w.ratings, MfConfig{.factors = 2, .epochs = 5});
    EXPECT_THROW(recommend_top_n("ghost", Method::matrix_factorization, 5, w.inputs(&mf.factors)), ColdStartError);
    EXPECT_EQ(recommend_top_n("u001", Method::matrix_factorization, 50, w.inputs(&mf.factors)).size(), 0u);
    EXPECT_THROW(recommend_top_n("u001", Method::matrix_factorization, 5, w.inputs()), InvalidArgument);
}

TEST(TopRated, MeanRatingWithGlobalMeanForUnrated) {
    const std::vector<FoodItem> items = {flavorrec::testing::dish("a"), flavorrec::testing::dish("b"),
                                         flavorrec::testing::dish("c")};
    const std::vector<Rating> ratings = {{"u", "a", 5}, {"v", "a", 3}, {"u", "b", 1}};
    const auto top = top_rated(items, ratings, 10);
    EXPECT_EQ(top, (std::vector<ScoredDish>{{"a", 4}, {"c", 3}, {"b", 1}}));
    const auto empty = top_rated(items, {}, 2);
    EXPECT_EQ(empty, (std::vector<ScoredDish>{{"a", 3}, {"b", 3}}));
}
