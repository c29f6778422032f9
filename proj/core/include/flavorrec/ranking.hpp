#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "flavorrec/evaluation.hpp"
#include "flavorrec/matrix_factorization.hpp"
#include "flavorrec/similarity.hpp"
#include "flavorrec/tfidf.hpp"

namespace flavorrec {

struct ScoredDish {
    DishId dish_id;
    double score = 0;

    bool operator==(const ScoredDish&) const = default;
};

/// Read-only views over everything a recommendation may consult.
struct RecommendationInputs {
    std::span<const FoodItem> items;
    std::span<const Rating> ratings;       // all users
    const DishIndex* tag_index = nullptr;  // for Method::tfidf
    const DishIndex* flavor_index = nullptr;  // for Method::tfidf_flavor, carries flavour blocks
    SimilarityMode flavor_mode = SimilarityMode::blended();
    const LatentFactors* factors = nullptr;  // for Method::matrix_factorization
};

/// Top `n` unrated dishes by predicted score, descending, ties by dish id.
/// Throws ColdStartError when the user has no ratings (content methods) or is
/// not in the factor model (MF).
std::vector<ScoredDish> recommend_top_n(const UserId& user, Method method, std::size_t n,
                                        const RecommendationInputs& inputs);

/// Dishes ranked by mean rating over all users; dishes nobody rated score the
/// global mean (3 when there are no ratings at all).
std::vector<ScoredDish> top_rated(std::span<const FoodItem> items, std::span<const Rating> ratings, std::size_t n);

/// Sorts by score descending then id ascending and truncates to n.
void rank_and_truncate(std::vector<ScoredDish>& dishes, std::size_t n);

}  // namespace flavorrec
