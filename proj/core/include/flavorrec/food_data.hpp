#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flavorrec/types.hpp"

namespace flavorrec {

/// Ingredient -> bitterness entry, applied to dish tags at load time.
struct LexiconEntry {
    double intensity = 0;  // (0, 1]
    bool too_bitter = false;
};

using BitterLexicon = std::map<std::string, LexiconEntry>;

struct FoodLoadOptions {
    std::optional<BitterLexicon> lexicon;
    /// Missing nutrient fields become 0 and the item is stamped `imputed`.
    bool allow_missing_as_zero = false;
};

/// Parses a food database document (JSON object with a "dishes" array).
/// Throws ParseError on malformed input, ValidationError naming the dish and
/// field on invariant violations or duplicate ids.
std::vector<FoodItem> parse_food_db(std::string_view document, const FoodLoadOptions& options = {});
std::vector<FoodItem> load_food_db(const std::filesystem::path& path, const FoodLoadOptions& options = {});

/// `ingredient,intensity,too_bitter` CSV.
BitterLexicon parse_bitter_lexicon(std::string_view csv);
BitterLexicon load_bitter_lexicon(const std::filesystem::path& path);

/// Adds lexicon hits for every tag found in the lexicon, skipping ingredients
/// the item already lists.
void apply_lexicon(FoodItem& item, const BitterLexicon& lexicon);

/// Throws ValidationError if the item breaks a FoodItem/NutritionFacts invariant.
void validate(const FoodItem& item);

struct RatingLoadResult {
    std::vector<Rating> ratings;  // order of last occurrence in the file
    std::size_t collapsed = 0;    // duplicate (user, dish) rows overwritten
};

/// `user_id,dish_id,score` CSV. Duplicate pairs collapse to the last row.
/// When `known_dishes` is given, unknown dish ids are a ValidationError.
RatingLoadResult parse_ratings(std::string_view csv, std::span<const FoodItem> known_dishes = {});
RatingLoadResult load_ratings(const std::filesystem::path& path, std::span<const FoodItem> known_dishes = {});

/// `user_id,dish_id,bitter,rich,salt,sweet,umami` CSV (columns by header name).
std::vector<SurveyResponse> parse_survey(std::string_view csv, std::span<const FoodItem> known_dishes = {});
std::vector<SurveyResponse> load_survey(const std::filesystem::path& path,
                                        std::span<const FoodItem> known_dishes = {});

std::string format_rating_row(const Rating& r);
std::string format_survey_row(const SurveyResponse& r);
inline constexpr std::string_view kRatingsHeader = "user_id,dish_id,score";
inline constexpr std::string_view kSurveyHeader = "user_id,dish_id,bitter,rich,salt,sweet,umami";

/// Profiles document: {"profiles": {"<dish id>": {"bitter": .., ...}}}.
/// Doubles are written with round-trip precision.
std::string serialize_profiles(const ProfileMap& profiles);
ProfileMap parse_profiles(std::string_view document);
void save_profiles(const ProfileMap& profiles, const std::filesystem::path& path);
ProfileMap load_profiles(const std::filesystem::path& path);

/// Whole-file read; throws Error when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);
/// Writes via a temporary sibling and rename; throws Error when unwritable.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace flavorrec
