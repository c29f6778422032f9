#include "flavorrec/flavor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flavorrec/error.hpp"
#include "flavorrec/food_data.hpp"
#include "json_util.hpp"

namespace flavorrec {

using detail::json;

namespace {

void require_tanw(double total) {
    if (!(total > 0)) throw DegenerateInputError("total active nutrient weight is zero");
}

double finish(double raw_score, const FlavorWeights& w, Flavor f) {
    const auto& r = w.rescale_for(f);
    return clamp_flavor(r.gain * raw_score + r.offset);
}

template <typename Hits>
double intensity_sum(const Hits& hits) {
    double sum = 0;
    for (const auto& h : hits) sum += h.intensity;
    return sum;
}

}  // namespace

void validate(const FlavorWeights& w) {
    const double scalars[] = {w.sweet_x, w.sweet_y, w.bitter_x, w.bitter_y, w.bitter_z, w.rich_x,
                              w.rich_y,  w.rich_z,  w.rich_normalizer, w.salt_constant};
    for (double v : scalars)
        if (!std::isfinite(v)) throw InvalidArgument("flavour weights must be finite");
    for (double v : w.umami_multipliers)
        if (!std::isfinite(v)) throw InvalidArgument("flavour weights must be finite");
    if (w.rich_normalizer == 0) throw InvalidArgument("rich_normalizer must be nonzero");
    for (auto f : kAllFlavors) {
        const auto& r = w.rescale_for(f);
        if (!std::isfinite(r.gain) || !std::isfinite(r.offset))
            throw InvalidArgument("rescale for " + std::string(flavor_name(f)) + " must be finite");
        if (!(r.gain > 0)) throw InvalidArgument("rescale gain for " + std::string(flavor_name(f)) + " must be > 0");
    }
}

FlavorWeights parse_weights(std::string_view document) {
    const auto doc = detail::parse_json(document, "weights");
    if (!doc.is_object()) throw ParseError("weights: expected an object");

    FlavorWeights w;
    const std::pair<const char*, double FlavorWeights::*> scalars[] = {
        {"sweet_x", &FlavorWeights::sweet_x},   {"sweet_y", &FlavorWeights::sweet_y},
        {"bitter_x", &FlavorWeights::bitter_x}, {"bitter_y", &FlavorWeights::bitter_y},
        {"bitter_z", &FlavorWeights::bitter_z}, {"rich_x", &FlavorWeights::rich_x},
        {"rich_y", &FlavorWeights::rich_y},     {"rich_z", &FlavorWeights::rich_z},
        {"rich_normalizer", &FlavorWeights::rich_normalizer},
        {"salt_constant", &FlavorWeights::salt_constant},
    };

    for (const auto& [key, value] : doc.items()) {
        const auto scalar = std::find_if(std::begin(scalars), std::end(scalars),
                                         [&](const auto& s) { return key == s.first; });
        if (scalar != std::end(scalars)) {
            w.*(scalar->second) = detail::number_field(doc, key, "weights");
        } else if (key == "umami_multipliers") {
            if (!value.is_object()) throw ParseError("weights: 'umami_multipliers' must be an object");
            for (const auto& [group_name, _] : value.items()) {
                const auto g = parse_umami_group(group_name);
                if (!g) throw ParseError("weights: unknown umami group '" + group_name + "'");
                w.umami_multipliers[static_cast<std::size_t>(*g)] =
                    detail::number_field(value, group_name, "weights umami_multipliers");
            }
        } else if (key == "rescale") {
            if (!value.is_object()) throw ParseError("weights: 'rescale' must be an object");
            for (const auto& [flavor, entry] : value.items()) {
                const auto f = parse_flavor(flavor);
                if (!f) throw ParseError("weights: unknown flavour '" + flavor + "' in rescale");
                if (!entry.is_object()) throw ParseError("weights: rescale entries must be objects");
                auto& r = w.rescale[static_cast<std::size_t>(*f)];
                for (const auto& [field, _] : entry.items())
                    if (field != "gain" && field != "offset")
                        throw ParseError("weights: unknown rescale field '" + field + "'");
                if (entry.contains("gain")) r.gain = detail::number_field(entry, "gain", "weights rescale");
                if (entry.contains("offset")) r.offset = detail::number_field(entry, "offset", "weights rescale");
            }
        } else {
            throw ParseError("weights: unknown field '" + key + "'");
        }
    }
    validate(w);
    return w;
}

FlavorWeights load_weights(const std::filesystem::path& path) { return parse_weights(read_file(path)); }

double tanw(const NutritionFacts& n) { return n.carbohydrate_g + n.protein_g + n.fat_g + n.sodium_g; }

double clamp_flavor(double score) {
    if (std::isnan(score)) return kFlavorMin;
    return std::clamp(score, kFlavorMin, kFlavorMax);
}

namespace raw {

double salt(const NutritionFacts& n, const FlavorWeights& w) {
    const double total = tanw(n);
    require_tanw(total);
    return w.salt_constant * n.sodium_g / total;
}

double sweet(const NutritionFacts& n, const FlavorWeights& w) {
    const double total = tanw(n);
    require_tanw(total);
    const double a = (n.sugar_g - n.fibre_g) / total;
    const double b = n.carbohydrate_g > 0 ? n.sugar_g / n.carbohydrate_g : 0.0;
    return w.sweet_x * a + w.sweet_y * b;
}

double bitter(const FoodItem& item, const FlavorWeights& w) {
    return w.bitter_x * intensity_sum(item.bitter_hits) + w.bitter_y * intensity_sum(item.too_bitter_hits) +
           w.bitter_z * item.nutrition.iron_g;
}

double umami(const FoodItem& item, const FlavorWeights& w) {
    const double total = tanw(item.nutrition);
    require_tanw(total);
    const double a = item.nutrition.protein_g / total;
    double b = 0;
    for (auto g : kAllUmamiGroups) b += w.umami_multiplier(g) * item.umami_count(g);
    return a + b;
}

double richness(const NutritionFacts& n, const FlavorWeights& w) {
    const double total = tanw(n);
    require_tanw(total);
    const double a = n.fat_g > 0 ? n.saturated_fat_g / n.fat_g : 0.0;
    const double b = n.fat_g / total;
    const double c = n.cholesterol_mg / total * 1000.0;
    const double d = w.rich_x * a + w.rich_y * b + w.rich_z * c;
    return d / w.rich_normalizer * 10.0;
}

}  // namespace raw

double salt_score(const NutritionFacts& n, const FlavorWeights& w) { return finish(raw::salt(n, w), w, Flavor::salt); }
double sweet_score(const NutritionFacts& n, const FlavorWeights& w) { return finish(raw::sweet(n, w), w, Flavor::sweet); }
double bitter_score(const FoodItem& item, const FlavorWeights& w) {
    return finish(raw::bitter(item, w), w, Flavor::bitter);
}
double umami_score(const FoodItem& item, const FlavorWeights& w) { return finish(raw::umami(item, w), w, Flavor::umami); }
double richness_score(const NutritionFacts& n, const FlavorWeights& w) {
    return finish(raw::richness(n, w), w, Flavor::rich);
}

FlavorProfile flavor_profile(const FoodItem& item, const FlavorWeights& w) {
    if (!(tanw(item.nutrition) > 0))
        throw DegenerateInputError("dish '" + item.id + "': total active nutrient weight is zero");
    FlavorProfile p;
    p[Flavor::bitter] = bitter_score(item, w);
    p[Flavor::rich] = richness_score(item.nutrition, w);
    p[Flavor::salt] = salt_score(item.nutrition, w);
    p[Flavor::sweet] = sweet_score(item.nutrition, w);
    p[Flavor::umami] = umami_score(item, w);
    return p;
}

ProfileMap flavor_profiles(std::span<const FoodItem> items, const FlavorWeights& w) {
    ProfileMap out;
    for (const auto& item : items) out.emplace(item.id, flavor_profile(item, w));
    return out;
}

double population_variance(std::span<const double> values) {
    if (values.empty()) throw InvalidArgument("variance of an empty list");
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(values.size());
}

double upper_quartile(std::span<const double> values) {
    if (values.empty()) throw InvalidArgument("quartile of an empty list");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double rank = 0.75 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

CalibrationTable calibrate(const ProfileMap& generated, std::span<const SurveyResponse> survey, double threshold) {
    if (!std::isfinite(threshold) || !(threshold > 0))
        throw InvalidArgument("action threshold must be a finite value > 0");
    if (survey.empty()) throw InvalidArgument("calibration needs at least one survey response");

    std::array<std::vector<double>, kFlavorCount> diffs;
    for (auto& d : diffs) d.reserve(survey.size());
    for (const auto& response : survey) {
        const auto it = generated.find(response.dish_id);
        if (it == generated.end())
            throw ValidationError("surveyed dish '" + response.dish_id + "' has no generated profile");
        for (auto f : kAllFlavors)
            diffs[static_cast<std::size_t>(f)].push_back(it->second[f] - response.scores[f]);
    }
    // Sorting makes the variance sum independent of survey order.
    for (auto& d : diffs) std::sort(d.begin(), d.end());

    CalibrationTable table;
    table.action_threshold = threshold;
    for (auto f : kAllFlavors) {
        const auto& d = diffs[static_cast<std::size_t>(f)];
        auto& entry = table[f];
        entry.variance = population_variance(d);
        entry.q3 = upper_quartile(d);
        entry.active = std::abs(entry.variance) >= threshold;
        entry.error = entry.active ? entry.q3 * std::log(entry.variance) : 0.0;
    }
    return table;
}

FlavorProfile apply_calibration(const FlavorProfile& p, const CalibrationTable& t) {
    FlavorProfile out;
    for (auto f : kAllFlavors) out[f] = clamp_flavor(p[f] - t[f].error);
    return out;
}

ProfileMap apply_calibration(const ProfileMap& profiles, const CalibrationTable& t) {
    ProfileMap out;
    for (const auto& [id, p] : profiles) out.emplace(id, apply_calibration(p, t));
    return out;
}

std::string serialize_calibration(const CalibrationTable& t) {
    json doc = {{"action_threshold", t.action_threshold}, {"flavours", json::object()}};
    for (auto f : kAllFlavors) {
        const auto& e = t[f];
        doc["flavours"][std::string(flavor_name(f))] = {
            {"variance", e.variance}, {"q3", e.q3}, {"error", e.error}, {"active", e.active}};
    }
    return doc.dump(2) + "\n";
}

CalibrationTable parse_calibration(std::string_view document) {
    const auto doc = detail::parse_json(document, "calibration");
    CalibrationTable t;
    try {
        t.action_threshold = detail::number_field(doc, "action_threshold", "calibration");
        const auto& flavours = doc.at("flavours");
        for (auto f : kAllFlavors) {
            const auto& e = flavours.at(std::string(flavor_name(f)));
            auto& entry = t[f];
            entry.variance = detail::number_field(e, "variance", "calibration");
            entry.q3 = detail::number_field(e, "q3", "calibration");
            entry.error = detail::number_field(e, "error", "calibration");
            entry.active = e.at("active").get<bool>();
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("calibration: ") + e.what());
    }
    return t;
}

}  // namespace flavorrec
