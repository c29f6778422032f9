#pragma once

#include <span>

#include "flavorrec/similarity.hpp"
#include "flavorrec/types.hpp"

namespace flavorrec {

struct ContentPrediction {
    double score = 0;
    /// Every similarity was zero; score is the user's mean rating.
    bool fallback = false;
};

struct WeightedScore {
    double similarity = 0;
    double score = 0;
};

/// sum(sim * score) / sum(sim), or the plain mean of the scores when every
/// similarity is zero; clamped to the rating scale.
ContentPrediction aggregate_preference(std::span<const WeightedScore> neighbours);

/// Predicted rating of `target` from the similarity-weighted ratings of the
/// dishes the user has rated. Throws ColdStartError on an empty history and
/// NotFound when a dish has no vector.
ContentPrediction predict_content(std::span<const Rating> user_ratings, const DishId& target,
                                  const DishIndex& vectors, const SimilarityMode& mode);

}  // namespace flavorrec
