#include "flavorrec/food_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "csv.hpp"
#include "flavorrec/error.hpp"
#include "json_util.hpp"

namespace flavorrec {

using detail::json;

std::string_view flavor_name(Flavor f) {
    switch (f) {
        case Flavor::bitter: return "bitter";
        case Flavor::rich: return "rich";
        case Flavor::salt: return "salt";
        case Flavor::sweet: return "sweet";
        case Flavor::umami: return "umami";
    }
    return "?";
}

std::optional<Flavor> parse_flavor(std::string_view name) {
    for (auto f : kAllFlavors)
        if (flavor_name(f) == name) return f;
    return std::nullopt;
}

std::string_view umami_group_name(UmamiGroup g) {
    switch (g) {
        case UmamiGroup::protein_supplement: return "protein_supplement";
        case UmamiGroup::vegetable: return "vegetable";
        case UmamiGroup::meat: return "meat";
        case UmamiGroup::savoury: return "savoury";
    }
    return "?";
}

std::optional<UmamiGroup> parse_umami_group(std::string_view name) {
    for (auto g : kAllUmamiGroups)
        if (umami_group_name(g) == name) return g;
    return std::nullopt;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + path.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw Error("cannot write " + path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot write " + path.string());
    }
}

namespace {

struct NutrientField {
    const char* name;
    double NutritionFacts::*member;
};

constexpr NutrientField kNutrientFields[] = {
    {"carbohydrate_g", &NutritionFacts::carbohydrate_g},
    {"sugar_g", &NutritionFacts::sugar_g},
    {"fibre_g", &NutritionFacts::fibre_g},
    {"protein_g", &NutritionFacts::protein_g},
    {"fat_g", &NutritionFacts::fat_g},
    {"saturated_fat_g", &NutritionFacts::saturated_fat_g},
    {"cholesterol_mg", &NutritionFacts::cholesterol_mg},
    {"sodium_g", &NutritionFacts::sodium_g},
    {"iron_g", &NutritionFacts::iron_g},
    {"calcium_g", &NutritionFacts::calcium_g},
};

std::string lowercase(std::string_view s) {
    std::string out(csv::trim(s));
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string dish_context(const std::string& id) { return "dish '" + id + "'"; }

std::vector<BitterHit> parse_hits(const json& arr, const std::string& ctx, const char* key) {
    if (!arr.is_array()) throw ParseError(ctx + ": '" + key + "' must be an array");
    std::vector<BitterHit> hits;
    for (const auto& h : arr) {
        if (!h.is_object() || !h.contains("ingredient") || !h.contains("intensity") || !h["ingredient"].is_string())
            throw ParseError(ctx + ": entries of '" + key + "' need 'ingredient' and 'intensity'");
        hits.push_back({lowercase(h["ingredient"].get<std::string>()),
                        detail::number_field(h, "intensity", ctx + " " + key)});
    }
    return hits;
}

FoodItem parse_item(const json& d, std::size_t position, const FoodLoadOptions& options) {
    if (!d.is_object()) throw ParseError("dish #" + std::to_string(position) + " is not an object");
    if (!d.contains("id") || !d["id"].is_string())
        throw ParseError("dish #" + std::to_string(position) + ": missing string field 'id'");

    FoodItem item;
    item.id = d["id"].get<std::string>();
    const auto ctx = dish_context(item.id);
    if (item.id.empty()) throw ValidationError("dish #" + std::to_string(position) + ": empty id");

    if (d.contains("name")) {
        if (!d["name"].is_string()) throw ParseError(ctx + ": 'name' must be a string");
        item.name = d["name"].get<std::string>();
    }
    if (d.contains("cuisine") && !d["cuisine"].is_null()) {
        if (!d["cuisine"].is_string()) throw ParseError(ctx + ": 'cuisine' must be a string");
        item.cuisine = lowercase(d["cuisine"].get<std::string>());
    }

    if (!d.contains("tags") || !d["tags"].is_array()) throw ParseError(ctx + ": missing array field 'tags'");
    std::set<std::string> tags;
    for (const auto& t : d["tags"]) {
        if (!t.is_string()) throw ParseError(ctx + ": tags must be strings");
        auto tag = lowercase(t.get<std::string>());
        if (!tag.empty()) tags.insert(std::move(tag));
    }
    item.tags.assign(tags.begin(), tags.end());

    if (!d.contains("nutrition") || !d["nutrition"].is_object())
        throw ParseError(ctx + ": missing object field 'nutrition'");
    const auto& n = d["nutrition"];
    for (const auto& [key, _] : n.items()) {
        const bool known = std::any_of(std::begin(kNutrientFields), std::end(kNutrientFields),
                                       [&](const NutrientField& f) { return key == f.name; });
        if (!known) throw ParseError(ctx + ": unknown nutrition field '" + key + "'");
    }
    for (const auto& field : kNutrientFields) {
        if (!n.contains(field.name)) {
            if (!options.allow_missing_as_zero)
                throw ValidationError(ctx + ": missing nutrition field '" + field.name + "'");
            item.imputed = true;
            continue;
        }
        item.nutrition.*field.member = detail::number_field(n, field.name, ctx);
    }

    if (d.contains("bitter_hits")) item.bitter_hits = parse_hits(d["bitter_hits"], ctx, "bitter_hits");
    if (d.contains("too_bitter_hits")) item.too_bitter_hits = parse_hits(d["too_bitter_hits"], ctx, "too_bitter_hits");

    if (d.contains("umami_group_counts")) {
        const auto& u = d["umami_group_counts"];
        if (!u.is_object()) throw ParseError(ctx + ": 'umami_group_counts' must be an object");
        for (const auto& [key, value] : u.items()) {
            const auto group = parse_umami_group(key);
            if (!group) throw ParseError(ctx + ": unknown umami group '" + key + "'");
            if (!value.is_number_integer() || value.get<long long>() < 0)
                throw ValidationError(ctx + ": umami group '" + key + "' must be a nonnegative integer");
            item.umami_group_counts[static_cast<std::size_t>(*group)] = value.get<unsigned>();
        }
    }

    if (options.lexicon) apply_lexicon(item, *options.lexicon);
    validate(item);
    return item;
}

}  // namespace

void validate(const FoodItem& item) {
    const auto ctx = dish_context(item.id);
    if (item.id.empty()) throw ValidationError("dish with empty id");
    if (item.tags.empty()) throw ValidationError(ctx + ": tags must be nonempty");
    for (const auto& field : kNutrientFields) {
        const double v = item.nutrition.*field.member;
        if (!std::isfinite(v) || v < 0)
            throw ValidationError(ctx + ": nutrition field '" + field.name + "' must be a finite value >= 0");
    }
    const auto& n = item.nutrition;
    if (n.sugar_g > n.carbohydrate_g)
        throw ValidationError(ctx + ": field 'sugar_g' exceeds carbohydrate_g");
    if (n.fibre_g > n.carbohydrate_g)
        throw ValidationError(ctx + ": field 'fibre_g' exceeds carbohydrate_g");
    if (n.saturated_fat_g > n.fat_g)
        throw ValidationError(ctx + ": field 'saturated_fat_g' exceeds fat_g");
    auto check_hits = [&](const std::vector<BitterHit>& hits, const char* key) {
        for (const auto& h : hits)
            if (!(h.intensity > 0 && h.intensity <= 1))
                throw ValidationError(ctx + ": " + key + " intensity of '" + h.ingredient + "' must be in (0, 1]");
    };
    check_hits(item.bitter_hits, "bitter_hits");
    check_hits(item.too_bitter_hits, "too_bitter_hits");
}

void apply_lexicon(FoodItem& item, const BitterLexicon& lexicon) {
    auto listed = [&](const std::string& ingredient) {
        auto same = [&](const BitterHit& h) { return h.ingredient == ingredient; };
        return std::any_of(item.bitter_hits.begin(), item.bitter_hits.end(), same) ||
               std::any_of(item.too_bitter_hits.begin(), item.too_bitter_hits.end(), same);
    };
    for (const auto& tag : item.tags) {
        const auto it = lexicon.find(tag);
        if (it == lexicon.end() || listed(tag)) continue;
        auto& hits = it->second.too_bitter ? item.too_bitter_hits : item.bitter_hits;
        hits.push_back({tag, it->second.intensity});
    }
}

std::vector<FoodItem> parse_food_db(std::string_view document, const FoodLoadOptions& options) {
    const auto doc = detail::parse_json(document, "food database");
    const json* dishes = nullptr;
    if (doc.is_object() && doc.contains("dishes")) dishes = &doc["dishes"];
    if (dishes == nullptr || !dishes->is_array())
        throw ParseError("food database: expected an object with a 'dishes' array");

    std::vector<FoodItem> items;
    items.reserve(dishes->size());
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < dishes->size(); ++i) {
        try {
            auto item = parse_item((*dishes)[i], i, options);
            if (!seen.insert(item.id).second) throw ValidationError("duplicate dish id '" + item.id + "'");
            items.push_back(std::move(item));
        } catch (const json::exception& e) {
            throw ParseError("food database dish #" + std::to_string(i) + ": " + e.what());
        }
    }
    return items;
}

std::vector<FoodItem> load_food_db(const std::filesystem::path& path, const FoodLoadOptions& options) {
    return parse_food_db(read_file(path), options);
}

BitterLexicon parse_bitter_lexicon(std::string_view text) {
    const auto table = csv::parse(text, "bitter lexicon");
    const auto ci = table.column("ingredient");
    const auto cv = table.column("intensity");
    const auto cb = table.column("too_bitter");
    if (ci == std::string::npos || cv == std::string::npos || cb == std::string::npos)
        throw ParseError("bitter lexicon: header must be ingredient,intensity,too_bitter");

    BitterLexicon lexicon;
    for (const auto& row : table.rows) {
        const auto ctx = "bitter lexicon line " + std::to_string(row.line);
        const auto ingredient = lowercase(row.fields[ci]);
        if (ingredient.empty()) throw ValidationError(ctx + ": empty ingredient");
        const double intensity = csv::parse_double(row.fields[cv], ctx);
        if (!(intensity > 0 && intensity <= 1))
            throw ValidationError(ctx + ": intensity must be in (0, 1]");
        const auto flag = csv::parse_integer(row.fields[cb], ctx);
        if (flag != 0 && flag != 1) throw ValidationError(ctx + ": too_bitter must be 0 or 1");
        lexicon[ingredient] = {intensity, flag == 1};
    }
    return lexicon;
}

BitterLexicon load_bitter_lexicon(const std::filesystem::path& path) {
    return parse_bitter_lexicon(read_file(path));
}

namespace {

std::unordered_set<std::string> dish_ids(std::span<const FoodItem> items) {
    std::unordered_set<std::string> ids;
    for (const auto& item : items) ids.insert(item.id);
    return ids;
}

std::size_t require_column(const csv::Table& t, std::string_view name, std::string_view what) {
    const auto c = t.column(name);
    if (c == std::string::npos) throw ParseError(std::string(what) + ": missing column '" + std::string(name) + "'");
    return c;
}

}  // namespace

RatingLoadResult parse_ratings(std::string_view text, std::span<const FoodItem> known_dishes) {
    const auto table = csv::parse(text, "ratings");
    const auto cu = require_column(table, "user_id", "ratings");
    const auto cd = require_column(table, "dish_id", "ratings");
    const auto cs = require_column(table, "score", "ratings");
    const auto known = dish_ids(known_dishes);

    std::vector<Rating> rows;
    rows.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const auto ctx = "ratings line " + std::to_string(row.line);
        Rating r{row.fields[cu], row.fields[cd], 0};
        if (r.user_id.empty() || r.dish_id.empty()) throw ValidationError(ctx + ": empty user_id or dish_id");
        const auto score = csv::parse_integer(row.fields[cs], ctx);
        if (score < kMinRating || score > kMaxRating)
            throw ValidationError(ctx + ": score " + std::to_string(score) + " outside [1, 5]");
        r.score = static_cast<int>(score);
        if (!known_dishes.empty() && !known.contains(r.dish_id))
            throw ValidationError(ctx + ": unknown dish id '" + r.dish_id + "'");
        rows.push_back(std::move(r));
    }

    std::unordered_map<std::string, std::size_t> last;
    auto key = [](const Rating& r) { return r.user_id + '\x1f' + r.dish_id; };
    for (std::size_t i = 0; i < rows.size(); ++i) last[key(rows[i])] = i;

    RatingLoadResult result;
    result.collapsed = rows.size() - last.size();
    result.ratings.reserve(last.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (last[key(rows[i])] == i) result.ratings.push_back(std::move(rows[i]));
    return result;
}

RatingLoadResult load_ratings(const std::filesystem::path& path, std::span<const FoodItem> known_dishes) {
    return parse_ratings(read_file(path), known_dishes);
}

std::vector<SurveyResponse> parse_survey(std::string_view text, std::span<const FoodItem> known_dishes) {
    const auto table = csv::parse(text, "survey");
    const auto cu = require_column(table, "user_id", "survey");
    const auto cd = require_column(table, "dish_id", "survey");
    std::array<std::size_t, kFlavorCount> cols{};
    for (auto f : kAllFlavors) cols[static_cast<std::size_t>(f)] = require_column(table, flavor_name(f), "survey");
    const auto known = dish_ids(known_dishes);

    std::vector<SurveyResponse> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const auto ctx = "survey line " + std::to_string(row.line);
        SurveyResponse r{row.fields[cu], row.fields[cd], {}};
        if (r.user_id.empty() || r.dish_id.empty()) throw ValidationError(ctx + ": empty user_id or dish_id");
        if (!known_dishes.empty() && !known.contains(r.dish_id))
            throw ValidationError(ctx + ": unknown dish id '" + r.dish_id + "'");
        for (auto f : kAllFlavors) {
            const double v = csv::parse_double(row.fields[cols[static_cast<std::size_t>(f)]], ctx);
            if (v < kFlavorMin || v > kFlavorMax)
                throw ValidationError(ctx + ": " + std::string(flavor_name(f)) + " score outside [0, 10]");
            r.scores[f] = v;
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SurveyResponse> load_survey(const std::filesystem::path& path, std::span<const FoodItem> known_dishes) {
    return parse_survey(read_file(path), known_dishes);
}

std::string format_rating_row(const Rating& r) {
    return r.user_id + "," + r.dish_id + "," + std::to_string(r.score);
}

std::string format_survey_row(const SurveyResponse& r) {
    std::ostringstream ss;
    ss.precision(17);
    ss << r.user_id << ',' << r.dish_id;
    for (auto f : kAllFlavors) ss << ',' << r.scores[f];
    return ss.str();
}

std::string serialize_profiles(const ProfileMap& profiles) {
    json doc = {{"profiles", json::object()}};
    for (const auto& [id, p] : profiles) {
        json entry = json::object();
        for (auto f : kAllFlavors) entry[std::string(flavor_name(f))] = p[f];
        doc["profiles"][id] = std::move(entry);
    }
    return doc.dump(2) + "\n";
}

ProfileMap parse_profiles(std::string_view document) {
    const auto doc = detail::parse_json(document, "profiles");
    if (!doc.is_object() || !doc.contains("profiles") || !doc["profiles"].is_object())
        throw ParseError("profiles: expected an object with a 'profiles' object");
    ProfileMap out;
    for (const auto& [id, entry] : doc["profiles"].items()) {
        const auto ctx = "profile '" + id + "'";
        if (!entry.is_object()) throw ParseError(ctx + ": expected an object");
        FlavorProfile p;
        for (auto f : kAllFlavors) {
            const std::string key(flavor_name(f));
            if (!entry.contains(key)) throw ParseError(ctx + ": missing flavour '" + key + "'");
            p[f] = detail::number_field(entry, key, ctx);
        }
        out.emplace(id, p);
    }
    return out;
}

void save_profiles(const ProfileMap& profiles, const std::filesystem::path& path) {
    write_file(path, serialize_profiles(profiles));
}

ProfileMap load_profiles(const std::filesystem::path& path) { return parse_profiles(read_file(path)); }

}  // namespace flavorrec
