#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "flavorrec/types.hpp"

namespace flavorrec {

/// Post-formula linear map applied before clamping: gain * raw + offset.
struct Rescale {
    double gain = 1.0;
    double offset = 0.0;

    bool operator==(const Rescale&) const = default;
};

/// Coefficients of the five nutrient-based flavour formulas.
struct FlavorWeights {
    double sweet_x = 0.85;
    double sweet_y = 0.1;

    double bitter_x = 0.8;
    double bitter_y = 2.4;
    double bitter_z = 1.3;

    // protein_supplement, vegetable, meat, savoury
    std::array<double, kUmamiGroupCount> umami_multipliers = {0.8, 7.0, 3.0, 9.45};

    double rich_x = 0.5;
    double rich_y = 0.7;
    double rich_z = 50.0;
    double rich_normalizer = 0.992;

    /// Sodium to sodium-chloride normalisation (printed as 100 / 38.758).
    double salt_constant = 100.0 / 38.758;

    std::array<Rescale, kFlavorCount> rescale{};

    double umami_multiplier(UmamiGroup g) const { return umami_multipliers[static_cast<std::size_t>(g)]; }
    const Rescale& rescale_for(Flavor f) const { return rescale[static_cast<std::size_t>(f)]; }

    bool operator==(const FlavorWeights&) const = default;
};

/// Throws InvalidArgument on non-finite weights or non-positive rescale gains.
void validate(const FlavorWeights& w);

/// JSON object mirroring the FlavorWeights fields; absent fields keep defaults,
/// unknown fields are rejected. "umami_multipliers" and "rescale" are nested
/// objects keyed by group / flavour name.
FlavorWeights parse_weights(std::string_view document);
FlavorWeights load_weights(const std::filesystem::path& path);

/// Total Active Nutrient Weight: carbohydrate + protein + fat + sodium, grams.
double tanw(const NutritionFacts& n);

double salt_score(const NutritionFacts& n, const FlavorWeights& w = {});
double sweet_score(const NutritionFacts& n, const FlavorWeights& w = {});
double bitter_score(const FoodItem& item, const FlavorWeights& w = {});
double umami_score(const FoodItem& item, const FlavorWeights& w = {});
double richness_score(const NutritionFacts& n, const FlavorWeights& w = {});

/// Pre-clamp, pre-rescale values of the formulas above.
namespace raw {
double salt(const NutritionFacts& n, const FlavorWeights& w = {});
double sweet(const NutritionFacts& n, const FlavorWeights& w = {});
double bitter(const FoodItem& item, const FlavorWeights& w = {});
double umami(const FoodItem& item, const FlavorWeights& w = {});
double richness(const NutritionFacts& n, const FlavorWeights& w = {});
}  // namespace raw

/// All five scores. Throws DegenerateInputError naming the dish when TANW is 0.
FlavorProfile flavor_profile(const FoodItem& item, const FlavorWeights& w = {});
ProfileMap flavor_profiles(std::span<const FoodItem> items, const FlavorWeights& w = {});

double clamp_flavor(double score);

inline constexpr double kDefaultActionThreshold = 0.5;

struct FlavorCalibration {
    double variance = 0;
    double q3 = 0;
    double error = 0;
    bool active = false;

    bool operator==(const FlavorCalibration&) const = default;
};

struct CalibrationTable {
    std::array<FlavorCalibration, kFlavorCount> entries{};
    double action_threshold = kDefaultActionThreshold;

    const FlavorCalibration& operator[](Flavor f) const { return entries[static_cast<std::size_t>(f)]; }
    FlavorCalibration& operator[](Flavor f) { return entries[static_cast<std::size_t>(f)]; }

    bool operator==(const CalibrationTable&) const = default;
};

/// Divide-by-n variance.
double population_variance(std::span<const double> values);
/// Linear interpolation at zero-indexed rank 0.75 * (n - 1) of the sorted values.
double upper_quartile(std::span<const double> values);

/// Per flavour, over all responses: d = generated - surveyed,
/// error = Q3(d) * ln(var(d)) when var(d) >= threshold, else 0.
CalibrationTable calibrate(const ProfileMap& generated, std::span<const SurveyResponse> survey,
                           double threshold = kDefaultActionThreshold);

/// Subtracts each flavour's error and re-clamps to [0, 10].
FlavorProfile apply_calibration(const FlavorProfile& p, const CalibrationTable& t);
ProfileMap apply_calibration(const ProfileMap& profiles, const CalibrationTable& t);

std::string serialize_calibration(const CalibrationTable& t);
CalibrationTable parse_calibration(std::string_view document);

}  // namespace flavorrec
