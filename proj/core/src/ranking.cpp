#include "flavorrec/ranking.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flavorrec/content.hpp"
#include "flavorrec/error.hpp"

namespace flavorrec {

void rank_and_truncate(std::vector<ScoredDish>& dishes, std::size_t n) {
    std::sort(dishes.begin(), dishes.end(), [](const ScoredDish& a, const ScoredDish& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.dish_id < b.dish_id;
    });
    if (dishes.size() > n) dishes.resize(n);
}

std::vector<ScoredDish> recommend_top_n(const UserId& user, Method method, std::size_t n,
                                        const RecommendationInputs& inputs) {
    std::vector<Rating> history;
    for (const auto& r : inputs.ratings)
        if (r.user_id == user) history.push_back(r);
    std::set<DishId> rated;
    for (const auto& r : history) rated.insert(r.dish_id);

    std::vector<ScoredDish> out;
    if (method == Method::matrix_factorization) {
        if (inputs.factors == nullptr) throw InvalidArgument("matrix factorization model not trained");
        const auto& f = *inputs.factors;
        if (!f.user_index().contains(user)) throw ColdStartError("user '" + user + "' is not in the factor model");
        for (const auto& item : inputs.items) {
            if (rated.contains(item.id) || !f.item_index().contains(item.id)) continue;
            out.push_back({item.id, predict_mf(f, user, item.id)});
        }
    } else {
        if (history.empty()) throw ColdStartError("user '" + user + "' has no ratings");
        const bool flavored = method == Method::tfidf_flavor;
        const DishIndex* index = flavored ? inputs.flavor_index : inputs.tag_index;
        if (index == nullptr) throw InvalidArgument("dish index not available for method " + std::string(method_key(method)));
        const auto mode = flavored ? inputs.flavor_mode : SimilarityMode::tags_only();
        for (const auto& item : inputs.items) {
            if (rated.contains(item.id)) continue;
            out.push_back({item.id, predict_content(history, item.id, *index, mode).score});
        }
    }
    rank_and_truncate(out, n);
    return out;
}

std::vector<ScoredDish> top_rated(std::span<const FoodItem> items, std::span<const Rating> ratings, std::size_t n) {
    std::map<DishId, std::pair<double, std::size_t>> sums;
    double total = 0;
    for (const auto& r : ratings) {
        auto& s = sums[r.dish_id];
        s.first += r.score;
        ++s.second;
        total += r.score;
    }
    const double global = ratings.empty() ? 3.0 : total / static_cast<double>(ratings.size());
    std::vector<ScoredDish> out;
    out.reserve(items.size());
    for (const auto& item : items) {
        const auto it = sums.find(item.id);
        out.push_back({item.id, it == sums.end() ? global : it->second.first / static_cast<double>(it->second.second)});
    }
    rank_and_truncate(out, n);
    return out;
}

}  // namespace flavorrec
