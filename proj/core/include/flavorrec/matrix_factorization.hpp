#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "flavorrec/types.hpp"

namespace flavorrec {

/// One observed cell of the user-item matrix; real-valued so synthetic
/// matrices can be fitted exactly.
struct Observation {
    UserId user;
    DishId item;
    double value = 0;
};

std::vector<Observation> to_observations(std::span<const Rating> ratings);

struct MfConfig {
    std::size_t factors = 10;
    std::size_t epochs = 100;
    double learning_rate = 0.005;
    double regularization = 0.02;
    /// Factors start uniform in [-init_scale, init_scale].
    double init_scale = 0.05;
    std::uint64_t seed = 42;
};

void validate(const MfConfig& config);

/// Row-major user (P) and item (Q) factor matrices; rating ~ P[u] . Q[i].
class LatentFactors {
public:
    LatentFactors() = default;
    LatentFactors(std::map<UserId, std::size_t> users, std::map<DishId, std::size_t> items, std::size_t k);

    std::size_t k() const { return k_; }
    std::size_t user_count() const { return user_index_.size(); }
    std::size_t item_count() const { return item_index_.size(); }

    const std::map<UserId, std::size_t>& user_index() const { return user_index_; }
    const std::map<DishId, std::size_t>& item_index() const { return item_index_; }

    std::span<double> user_row(std::size_t u) { return {user_factors_.data() + u * k_, k_}; }
    std::span<const double> user_row(std::size_t u) const { return {user_factors_.data() + u * k_, k_}; }
    std::span<double> item_row(std::size_t i) { return {item_factors_.data() + i * k_, k_}; }
    std::span<const double> item_row(std::size_t i) const { return {item_factors_.data() + i * k_, k_}; }

    const std::vector<double>& user_factors() const { return user_factors_; }
    const std::vector<double>& item_factors() const { return item_factors_; }

    bool operator==(const LatentFactors&) const = default;

private:
    std::map<UserId, std::size_t> user_index_;
    std::map<DishId, std::size_t> item_index_;
    std::size_t k_ = 0;
    std::vector<double> user_factors_;
    std::vector<double> item_factors_;
};

struct EpochStats {
    std::size_t epoch = 0;  // 1-based
    double rmse = 0;        // over observed cells, after the epoch
    double objective = 0;   // squared error + L2 penalty on the rows each cell touches
};

struct MfTrainResult {
    LatentFactors factors;
    std::vector<EpochStats> history;
};

/// Plain two-matrix factorization by SGD over observed cells (no bias terms).
/// Cells are visited in a fresh seeded shuffle each epoch, so the result is
/// bit-identical for a given seed.
MfTrainResult train_mf(std::span<const Observation> cells, const MfConfig& config = {});
MfTrainResult train_mf(std::span<const Rating> ratings, const MfConfig& config = {});

/// Raw dot product of the factor rows.
double dot_mf(const LatentFactors& f, const UserId& user, const DishId& item);
/// Dot product clamped to [1, 5]. Throws NotFound for unknown user or item.
double predict_mf(const LatentFactors& f, const UserId& user, const DishId& item);

/// Squared-error-plus-L2 objective and RMSE of `f` on `ratings`.
EpochStats mf_fit_stats(const LatentFactors& f, std::span<const Observation> cells, double regularization);

}  // namespace flavorrec
