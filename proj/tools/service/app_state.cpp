#include "service/app_state.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "flavorrec/error.hpp"
#include "flavorrec/food_data.hpp"
#include "flavorrec/ranking.hpp"

namespace flavorrec::service {

namespace fs = std::filesystem;

namespace {

Response error(int status, const std::string& message) { return {status, json{{"error", message}}}; }

json profile_json(const FlavorProfile& p) {
    json out = json::object();
    for (auto f : kAllFlavors) out[std::string(flavor_name(f))] = p[f];
    return out;
}

json nutrition_json(const NutritionFacts& n) {
    return {{"carbohydrate_g", n.carbohydrate_g}, {"sugar_g", n.sugar_g},
            {"fibre_g", n.fibre_g},               {"protein_g", n.protein_g},
            {"fat_g", n.fat_g},                   {"saturated_fat_g", n.saturated_fat_g},
            {"cholesterol_mg", n.cholesterol_mg}, {"sodium_g", n.sodium_g},
            {"iron_g", n.iron_g},                 {"calcium_g", n.calcium_g}};
}

void append_line(const fs::path& path, std::string_view header, const std::string& line) {
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw Error("cannot append to " + path.string());
    if (fresh) out << header << '\n';
    out << line << '\n';
    out.flush();
    if (!out) throw Error("cannot append to " + path.string());
}

std::optional<std::string> string_field(const json& body, const char* key) {
    if (!body.contains(key) || !body[key].is_string()) return std::nullopt;
    auto s = body[key].get<std::string>();
    if (s.empty() || s.find_first_of(",\r\n") != std::string::npos) return std::nullopt;
    return s;
}

bool one_decimal(double v) {
    const double scaled = v * 10.0;
    return std::abs(scaled - std::round(scaled)) < 1e-9;
}

}  // namespace

AppState::AppState(fs::path data_dir, ServiceConfig config) : layout_{std::move(data_dir)}, config_(std::move(config)) {
    validate(config_.mode);
    validate(config_.mf);
    if (!(config_.threshold > 0)) throw InvalidArgument("action threshold must be > 0");
    if (!fs::is_directory(layout_.root)) throw Error("data directory " + layout_.root.string() + " does not exist");

    FoodLoadOptions options;
    if (fs::exists(layout_.lexicon())) options.lexicon = load_bitter_lexicon(layout_.lexicon());
    items_ = load_food_db(layout_.foods(), options);
    if (items_.empty()) throw ValidationError("food database " + layout_.foods().string() + " has no dishes");
    for (std::size_t i = 0; i < items_.size(); ++i) item_pos_.emplace(items_[i].id, i);

    FlavorWeights weights;
    if (config_.weights)
        weights = *config_.weights;
    else if (fs::exists(layout_.weights()))
        weights = load_weights(layout_.weights());
    raw_profiles_ = flavor_profiles(items_, weights);

    if (fs::exists(layout_.ratings())) {
        for (auto& r : load_ratings(layout_.ratings(), items_).ratings)
            ratings_[{r.user_id, r.dish_id}] = r.score;
    }
    if (fs::exists(layout_.survey())) survey_ = load_survey(layout_.survey(), items_);
    if (fs::exists(layout_.calibration())) calibration_ = parse_calibration(read_file(layout_.calibration()));

    vocabulary_ = build_vocabulary(items_);
    tag_index_ = build_index(items_, vocabulary_);
    rebuild_flavor_index();
}

void AppState::rebuild_flavor_index() {
    profiles_ = calibration_ ? apply_calibration(raw_profiles_, *calibration_) : raw_profiles_;
    flavor_index_ = build_index(items_, vocabulary_, &profiles_);
}

std::vector<Rating> AppState::ratings_snapshot() const {
    std::vector<Rating> out;
    out.reserve(ratings_.size());
    for (const auto& [key, score] : ratings_) out.push_back({key.first, key.second, score});
    return out;
}

void AppState::ensure_mf_model() const {
    if (mf_model_ && mf_generation_ == ratings_generation_) return;
    const auto ratings = ratings_snapshot();
    if (ratings.empty()) {
        mf_model_.reset();
    } else {
        mf_model_ = train_mf(ratings, config_.mf).factors;
    }
    mf_generation_ = ratings_generation_;
}

Response AppState::list_dishes(std::size_t offset, std::size_t limit) const {
    std::shared_lock lock(mutex_);
    json dishes = json::array();
    for (std::size_t i = offset; i < items_.size() && i - offset < limit; ++i) {
        const auto& item = items_[i];
        dishes.push_back({{"id", item.id},
                          {"name", item.name},
                          {"cuisine", item.cuisine ? json(*item.cuisine) : json(nullptr)},
                          {"tags", item.tags},
                          {"profile", profile_json(profiles_.at(item.id))}});
    }
    return {200, {{"total", items_.size()}, {"offset", offset}, {"limit", limit}, {"dishes", std::move(dishes)}}};
}

Response AppState::get_dish(const DishId& id) const {
    std::shared_lock lock(mutex_);
    const auto it = item_pos_.find(id);
    if (it == item_pos_.end()) return error(404, "unknown dish '" + id + "'");
    const auto& item = items_[it->second];
    return {200,
            {{"id", item.id},
             {"name", item.name},
             {"cuisine", item.cuisine ? json(*item.cuisine) : json(nullptr)},
             {"tags", item.tags},
             {"nutrition", nutrition_json(item.nutrition)},
             {"imputed", item.imputed},
             {"profile", profile_json(profiles_.at(item.id))},
             {"calibrated", calibration_.has_value()}}};
}

Response AppState::post_rating(const json& body) {
    if (!body.is_object()) return error(400, "expected a JSON object");
    const auto user = string_field(body, "user_id");
    const auto dish = string_field(body, "dish_id");
    if (!user || !dish) return error(400, "user_id and dish_id must be nonempty strings without commas");
    if (!body.contains("score") || !body["score"].is_number()) return error(400, "score must be a number");
    if (!item_pos_.contains(*dish)) return error(404, "unknown dish '" + *dish + "'");
    const double raw = body["score"].get<double>();
    if (raw != std::floor(raw) || raw < kMinRating || raw > kMaxRating)
        return error(422, "score must be an integer in [1, 5]");

    Rating r{*user, *dish, static_cast<int>(raw)};
    std::unique_lock lock(mutex_);
    append_line(layout_.ratings(), kRatingsHeader, format_rating_row(r));
    ratings_[{r.user_id, r.dish_id}] = r.score;
    ++ratings_generation_;
    return {201, {{"user_id", r.user_id}, {"dish_id", r.dish_id}, {"score", r.score}}};
}

Response AppState::get_recommendations(const UserId& user, const std::optional<std::string>& method_name,
                                       std::optional<std::size_t> n_opt) const {
    auto method = config_.default_method;
    if (method_name) {
        const auto parsed = parse_method(*method_name);
        if (!parsed) return error(400, "unknown method '" + *method_name + "' (mf, tfidf, tfidf-flavour)");
        method = *parsed;
    }
    const std::size_t n = n_opt.value_or(config_.default_n);

    std::shared_lock lock(mutex_);
    const auto ratings = ratings_snapshot();
    const bool has_history = std::any_of(ratings.begin(), ratings.end(), [&](const Rating& r) { return r.user_id == user; });

    std::vector<ScoredDish> ranked;
    bool fallback = !has_history;
    if (has_history) {
        RecommendationInputs inputs;
        inputs.items = items_;
        inputs.ratings = ratings;
        inputs.tag_index = &tag_index_;
        inputs.flavor_index = &flavor_index_;
        inputs.flavor_mode = config_.mode;
        std::unique_lock mf_lock(mf_mutex_, std::defer_lock);
        if (method == Method::matrix_factorization) {
            mf_lock.lock();
            ensure_mf_model();
            inputs.factors = mf_model_ ? &*mf_model_ : nullptr;
        }
        try {
            ranked = recommend_top_n(user, method, n, inputs);
        } catch (const ColdStartError&) {
            fallback = true;
        }
    }
    if (fallback) {
        std::set<DishId> rated;
        for (const auto& r : ratings)
            if (r.user_id == user) rated.insert(r.dish_id);
        ranked = top_rated(items_, ratings, items_.size());
        std::erase_if(ranked, [&](const ScoredDish& d) { return rated.contains(d.dish_id); });
        if (ranked.size() > n) ranked.resize(n);
    }

    json list = json::array();
    for (const auto& d : ranked)
        list.push_back({{"dish_id", d.dish_id}, {"name", items_[item_pos_.at(d.dish_id)].name}, {"predicted_score", d.score}});
    return {200,
            {{"user_id", user},
             {"method", method_key(method)},
             {"label", method_label(method)},
             {"fallback", fallback},
             {"recommendations", std::move(list)}}};
}

Response AppState::post_survey(const json& body) {
    if (!body.is_object()) return error(400, "expected a JSON object");
    const auto user = string_field(body, "user_id");
    const auto dish = string_field(body, "dish_id");
    if (!user || !dish) return error(400, "user_id and dish_id must be nonempty strings without commas");
    if (!item_pos_.contains(*dish)) return error(404, "unknown dish '" + *dish + "'");

    SurveyResponse r{*user, *dish, {}};
    for (auto f : kAllFlavors) {
        const std::string key(flavor_name(f));
        if (!body.contains(key) || !body[key].is_number()) return error(400, "missing numeric flavour '" + key + "'");
        const double v = body[key].get<double>();
        if (!(v >= kFlavorMin && v <= kFlavorMax)) return error(422, key + " must be in [0, 10]");
        if (!one_decimal(v)) return error(422, key + " accepts at most one decimal place");
        r.scores[f] = std::round(v * 10.0) / 10.0;
    }

    std::unique_lock lock(mutex_);
    append_line(layout_.survey(), kSurveyHeader, format_survey_row(r));
    survey_.push_back(r);
    json echo = {{"user_id", r.user_id}, {"dish_id", r.dish_id}};
    for (auto f : kAllFlavors) echo[std::string(flavor_name(f))] = r.scores[f];
    return {201, std::move(echo)};
}

Response AppState::calibrate() {
    std::unique_lock lock(mutex_);
    if (survey_.empty()) return error(409, "no survey responses to calibrate against");
    const auto table = flavorrec::calibrate(raw_profiles_, survey_, config_.threshold);
    const auto document = serialize_calibration(table);
    write_file(layout_.calibration(), document);
    calibration_ = table;
    rebuild_flavor_index();

    json body = json::parse(document);
    json rows = json::array();
    for (auto f : kAllFlavors) rows.push_back({{"taste", flavor_name(f)}, {"error", table[f].error}});
    body["table"] = std::move(rows);
    body["responses"] = survey_.size();
    return {200, std::move(body)};
}

Response AppState::evaluate(std::optional<double> split, std::optional<std::uint64_t> seed) const {
    EvaluationConfig cfg;
    cfg.train_fraction = split.value_or(0.8);
    cfg.seed = seed.value_or(42);
    cfg.flavor_mode = config_.mode;
    cfg.mf = config_.mf;
    if (!(cfg.train_fraction > 0 && cfg.train_fraction < 1)) return error(422, "split must be in (0, 1)");

    std::shared_lock lock(mutex_);
    const auto ratings = ratings_snapshot();
    if (ratings.empty()) return error(409, "no ratings to evaluate");
    try {
        const auto report = evaluate_methods(items_, ratings, profiles_, cfg);
        return {200, json::parse(report_to_json(report))};
    } catch (const InvalidArgument& e) {
        return error(409, e.what());
    }
}

std::size_t AppState::rating_count() const {
    std::shared_lock lock(mutex_);
    return ratings_.size();
}

std::size_t AppState::survey_count() const {
    std::shared_lock lock(mutex_);
    return survey_.size();
}

std::optional<CalibrationTable> AppState::calibration() const {
    std::shared_lock lock(mutex_);
    return calibration_;
}

FlavorProfile AppState::profile(const DishId& id) const {
    std::shared_lock lock(mutex_);
    const auto it = profiles_.find(id);
    if (it == profiles_.end()) throw NotFound("unknown dish '" + id + "'");
    return it->second;
}

}  // namespace flavorrec::service
