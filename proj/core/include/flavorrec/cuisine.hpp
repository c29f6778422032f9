#pragma once

#include <span>
#include <string>
#include <vector>

#include "flavorrec/types.hpp"

namespace flavorrec {

/// Bernoulli naive Bayes over tag presence with add-one smoothing.
class CuisineModel {
public:
    const std::vector<std::string>& classes() const { return classes_; }
    const std::vector<std::string>& vocabulary() const { return vocabulary_; }
    double prior(std::size_t c) const { return priors_.at(c); }
    /// P(tag present | class), smoothed: (count + 1) / (class size + 2).
    double presence(std::size_t c, std::size_t tag) const { return presence_.at(c).at(tag); }

private:
    friend CuisineModel train_naive_bayes(std::span<const FoodItem> items);

    std::vector<std::string> classes_;     // sorted
    std::vector<std::string> vocabulary_;  // sorted
    std::vector<double> priors_;
    std::vector<std::vector<double>> presence_;
};

struct CuisinePrediction {
    std::string cuisine;
    double posterior = 0;
    /// Aligned with CuisineModel::classes(); sums to 1.
    std::vector<double> posteriors;
};

/// Trains on items that carry a cuisine label. Throws InvalidArgument with
/// fewer than two distinct labels.
CuisineModel train_naive_bayes(std::span<const FoodItem> items);

/// Argmax posterior; exact ties go to the lexicographically first cuisine.
/// Tags outside the training vocabulary are ignored. Throws InvalidArgument
/// on an empty tag set.
CuisinePrediction classify_cuisine(const CuisineModel& model, std::span<const std::string> tags);

}  // namespace flavorrec
