#include "flavorrec/matrix_factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "flavorrec/error.hpp"

namespace flavorrec {

LatentFactors::LatentFactors(std::map<UserId, std::size_t> users, std::map<DishId, std::size_t> items,
                             std::size_t k)
    : user_index_(std::move(users)),
      item_index_(std::move(items)),
      k_(k),
      user_factors_(user_index_.size() * k, 0.0),
      item_factors_(item_index_.size() * k, 0.0) {}

void validate(const MfConfig& c) {
    if (c.factors == 0) throw InvalidArgument("latent dimension k must be >= 1");
    if (c.epochs == 0) throw InvalidArgument("epochs must be >= 1");
    if (!std::isfinite(c.learning_rate) || !(c.learning_rate > 0))
        throw InvalidArgument("learning rate must be a finite value > 0");
    if (!std::isfinite(c.regularization) || c.regularization < 0)
        throw InvalidArgument("regularization must be a finite value >= 0");
    if (!std::isfinite(c.init_scale) || c.init_scale < 0)
        throw InvalidArgument("init scale must be a finite value >= 0");
}

namespace {

struct Cell {
    std::size_t user;
    std::size_t item;
    double score;
};

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t f = 0; f < a.size(); ++f) s += a[f] * b[f];
    return s;
}

double squared_norm(std::span<const double> a) { return dot(a, a); }

EpochStats fit_stats(const LatentFactors& f, std::span<const Cell> cells, double regularization) {
    double sse = 0;
    double penalty = 0;
    for (const auto& c : cells) {
        const auto p = f.user_row(c.user);
        const auto q = f.item_row(c.item);
        const double e = c.score - dot(p, q);
        sse += e * e;
        penalty += squared_norm(p) + squared_norm(q);
    }
    EpochStats s;
    s.rmse = std::sqrt(sse / static_cast<double>(cells.size()));
    s.objective = sse + regularization * penalty;
    return s;
}

}  // namespace

std::vector<Observation> to_observations(std::span<const Rating> ratings) {
    std::vector<Observation> out;
    out.reserve(ratings.size());
    for (const auto& r : ratings) out.push_back({r.user_id, r.dish_id, static_cast<double>(r.score)});
    return out;
}

MfTrainResult train_mf(std::span<const Rating> ratings, const MfConfig& config) {
    return train_mf(to_observations(ratings), config);
}

MfTrainResult train_mf(std::span<const Observation> observations, const MfConfig& config) {
    validate(config);
    if (observations.empty()) throw InvalidArgument("matrix factorization needs at least one rating");

    std::map<UserId, std::size_t> users;
    std::map<DishId, std::size_t> items;
    for (const auto& o : observations) {
        users.emplace(o.user, 0);
        items.emplace(o.item, 0);
    }
    std::size_t next = 0;
    for (auto& [_, idx] : users) idx = next++;
    next = 0;
    for (auto& [_, idx] : items) idx = next++;

    std::vector<Cell> cells;
    cells.reserve(observations.size());
    for (const auto& o : observations) cells.push_back({users.at(o.user), items.at(o.item), o.value});

    MfTrainResult result;
    result.factors = LatentFactors(std::move(users), std::move(items), config.factors);
    auto& f = result.factors;

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> init(-config.init_scale, config.init_scale);
    for (std::size_t u = 0; u < f.user_count(); ++u)
        for (auto& v : f.user_row(u)) v = init(rng);
    for (std::size_t i = 0; i < f.item_count(); ++i)
        for (auto& v : f.item_row(i)) v = init(rng);

    std::vector<std::size_t> order(cells.size());
    std::iota(order.begin(), order.end(), 0);
    const double lr = config.learning_rate;
    const double reg = config.regularization;

    result.history.reserve(config.epochs);
    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t idx : order) {
            const auto& c = cells[idx];
            auto p = f.user_row(c.user);
            auto q = f.item_row(c.item);
            const double e = c.score - dot(p, q);
            for (std::size_t k = 0; k < config.factors; ++k) {
                const double pu = p[k];
                const double qi = q[k];
                p[k] += lr * (e * qi - reg * pu);
                q[k] += lr * (e * pu - reg * qi);
            }
        }
        auto stats = fit_stats(f, cells, reg);
        stats.epoch = epoch;
        if (!std::isfinite(stats.objective))
            throw InvalidArgument("matrix factorization diverged; lower the learning rate");
        result.history.push_back(stats);
    }
    return result;
}

double dot_mf(const LatentFactors& f, const UserId& user, const DishId& item) {
    const auto u = f.user_index().find(user);
    if (u == f.user_index().end()) throw NotFound("user '" + user + "' is not in the factor model");
    const auto i = f.item_index().find(item);
    if (i == f.item_index().end()) throw NotFound("dish '" + item + "' is not in the factor model");
    return dot(f.user_row(u->second), f.item_row(i->second));
}

double predict_mf(const LatentFactors& f, const UserId& user, const DishId& item) {
    return std::clamp(dot_mf(f, user, item), static_cast<double>(kMinRating), static_cast<double>(kMaxRating));
}

EpochStats mf_fit_stats(const LatentFactors& f, std::span<const Observation> observations, double regularization) {
    if (observations.empty()) throw InvalidArgument("fit statistics need at least one rating");
    std::vector<Cell> cells;
    cells.reserve(observations.size());
    for (const auto& o : observations) {
        const auto u = f.user_index().find(o.user);
        const auto i = f.item_index().find(o.item);
        if (u == f.user_index().end() || i == f.item_index().end())
            throw NotFound("cell (" + o.user + ", " + o.item + ") is outside the factor model");
        cells.push_back({u->second, i->second, o.value});
    }
    return fit_stats(f, cells, regularization);
}

}  // namespace flavorrec
