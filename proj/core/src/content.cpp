#include "flavorrec/content.hpp"

#include <algorithm>

#include "flavorrec/error.hpp"

namespace flavorrec {

ContentPrediction aggregate_preference(std::span<const WeightedScore> neighbours) {
    if (neighbours.empty()) throw ColdStartError("no rated dishes to aggregate");
    double weighted = 0;
    double total = 0;
    double plain = 0;
    for (const auto& n : neighbours) {
        weighted += n.similarity * n.score;
        total += n.similarity;
        plain += n.score;
    }
    ContentPrediction out;
    if (total > 0) {
        out.score = weighted / total;
    } else {
        out.score = plain / static_cast<double>(neighbours.size());
        out.fallback = true;
    }
    out.score = std::clamp(out.score, static_cast<double>(kMinRating), static_cast<double>(kMaxRating));
    return out;
}

ContentPrediction predict_content(std::span<const Rating> user_ratings, const DishId& target,
                                  const DishIndex& vectors, const SimilarityMode& mode) {
    if (user_ratings.empty()) throw ColdStartError("user has no rating history");
    const auto& target_vec = vectors.at(target);
    std::vector<WeightedScore> neighbours;
    neighbours.reserve(user_ratings.size());
    for (const auto& r : user_ratings)
        neighbours.push_back({similarity(target_vec, vectors.at(r.dish_id), mode), static_cast<double>(r.score)});
    return aggregate_preference(neighbours);
}

}  // namespace flavorrec
