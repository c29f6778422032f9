#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flavorrec {

using DishId = std::string;
using UserId = std::string;

/// Canonical flavour order. Every 5-slot array in the library uses it.
enum class Flavor : std::size_t { bitter = 0, rich = 1, salt = 2, sweet = 3, umami = 4 };

inline constexpr std::size_t kFlavorCount = 5;
inline constexpr std::array<Flavor, kFlavorCount> kAllFlavors = {
    Flavor::bitter, Flavor::rich, Flavor::salt, Flavor::sweet, Flavor::umami};

std::string_view flavor_name(Flavor f);
std::optional<Flavor> parse_flavor(std::string_view name);

inline constexpr double kFlavorMin = 0.0;
inline constexpr double kFlavorMax = 10.0;

struct FlavorProfile {
    std::array<double, kFlavorCount> scores{};

    double& operator[](Flavor f) { return scores[static_cast<std::size_t>(f)]; }
    double operator[](Flavor f) const { return scores[static_cast<std::size_t>(f)]; }

    bool operator==(const FlavorProfile&) const = default;
};

using ProfileMap = std::map<DishId, FlavorProfile>;

/// Masses per serving. Sodium, iron and calcium are in grams like the macronutrients.
struct NutritionFacts {
    double carbohydrate_g = 0;
    double sugar_g = 0;
    double fibre_g = 0;
    double protein_g = 0;
    double fat_g = 0;
    double saturated_fat_g = 0;
    double cholesterol_mg = 0;
    double sodium_g = 0;
    double iron_g = 0;
    double calcium_g = 0;  // stored, not used by any score

    bool operator==(const NutritionFacts&) const = default;
};

struct BitterHit {
    std::string ingredient;
    double intensity = 0;  // (0, 1]

    bool operator==(const BitterHit&) const = default;
};

enum class UmamiGroup : std::size_t { protein_supplement = 0, vegetable = 1, meat = 2, savoury = 3 };

inline constexpr std::size_t kUmamiGroupCount = 4;
inline constexpr std::array<UmamiGroup, kUmamiGroupCount> kAllUmamiGroups = {
    UmamiGroup::protein_supplement, UmamiGroup::vegetable, UmamiGroup::meat, UmamiGroup::savoury};

std::string_view umami_group_name(UmamiGroup g);
std::optional<UmamiGroup> parse_umami_group(std::string_view name);

struct FoodItem {
    DishId id;
    std::string name;
    std::vector<std::string> tags;  // lowercase, sorted, unique
    std::optional<std::string> cuisine;
    NutritionFacts nutrition;
    std::vector<BitterHit> bitter_hits;
    std::vector<BitterHit> too_bitter_hits;
    std::array<unsigned, kUmamiGroupCount> umami_group_counts{};
    bool imputed = false;  // some nutrient fields were missing and read as zero

    unsigned umami_count(UmamiGroup g) const { return umami_group_counts[static_cast<std::size_t>(g)]; }

    bool operator==(const FoodItem&) const = default;
};

inline constexpr int kMinRating = 1;
inline constexpr int kMaxRating = 5;

struct Rating {
    UserId user_id;
    DishId dish_id;
    int score = 0;

    bool operator==(const Rating&) const = default;
};

struct SurveyResponse {
    UserId user_id;
    DishId dish_id;
    FlavorProfile scores;

    bool operator==(const SurveyResponse&) const = default;
};

}  // namespace flavorrec
