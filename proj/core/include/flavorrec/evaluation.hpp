#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flavorrec/matrix_factorization.hpp"
#include "flavorrec/similarity.hpp"
#include "flavorrec/types.hpp"

namespace flavorrec {

enum class Method { matrix_factorization, tfidf, tfidf_flavor };

inline constexpr std::array<Method, 3> kAllMethods = {Method::matrix_factorization, Method::tfidf,
                                                      Method::tfidf_flavor};

/// CLI/API names: "mf", "tfidf", "tfidf-flavour".
std::string_view method_key(Method m);
std::optional<Method> parse_method(std::string_view key);
/// Report labels: "Matrix Factorisation", "TF-IDF", "TF-IDF with flavour".
std::string_view method_label(Method m);

struct PredictionPair {
    double predicted = 0;
    double actual = 0;
};

/// sqrt(mean squared difference). Throws InvalidArgument on an empty list.
double rmse(std::span<const PredictionPair> predictions);

struct RatingSplit {
    std::vector<Rating> train;
    std::vector<Rating> test;
};

/// Per-user stratified split: each user keeps round(fraction * n) ratings in
/// train, at least one. Deterministic per seed. Requires 0 < fraction < 1.
RatingSplit split_ratings(std::span<const Rating> ratings, double train_fraction, std::uint64_t seed);

enum class EvaluationTarget { held_out, train };

struct EvaluationConfig {
    double train_fraction = 0.8;
    std::uint64_t seed = 42;
    EvaluationTarget target = EvaluationTarget::held_out;
    std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
    /// Similarity used by the flavour method; the plain TF-IDF method is always tags-only.
    SimilarityMode flavor_mode = SimilarityMode::blended();
    MfConfig mf{};
    std::size_t workers = 1;
};

struct MethodResult {
    Method method{};
    double rmse = 0;
    std::size_t predictions = 0;
    /// Content: all-zero similarity fallbacks. MF: cells whose user or item was unseen in training.
    std::size_t fallbacks = 0;
};

struct EvaluationReport {
    std::vector<MethodResult> results;
    /// RMSE of predicting the mean of the evaluated scores (their population std dev).
    double baseline_rmse = 0;
    std::size_t train_size = 0;
    std::size_t evaluated_size = 0;
    std::string split_description;
    std::uint64_t seed = 0;

    const MethodResult* find(Method m) const;
};

/// Fits the selected methods on the train split and scores them on the
/// configured target split. `profiles` may be raw or calibrated; it must cover
/// every item when the flavour method is requested.
EvaluationReport evaluate_methods(std::span<const FoodItem> items, std::span<const Rating> ratings,
                                  const ProfileMap& profiles, const EvaluationConfig& config = {});

/// Plain-text table, RMSE to 3 decimals.
std::string format_report_table(const EvaluationReport& report);
std::string report_to_json(const EvaluationReport& report);

}  // namespace flavorrec
