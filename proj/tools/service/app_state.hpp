#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "flavorrec/evaluation.hpp"
#include "flavorrec/flavor.hpp"
#include "flavorrec/matrix_factorization.hpp"
#include "flavorrec/similarity.hpp"
#include "flavorrec/tfidf.hpp"
#include "flavorrec/types.hpp"

namespace flavorrec::service {

using nlohmann::json;

struct ServiceConfig {
    /// Overrides <data>/weights.json when set.
    std::optional<FlavorWeights> weights;
    double threshold = kDefaultActionThreshold;
    SimilarityMode mode = SimilarityMode::blended();
    MfConfig mf{};
    Method default_method = Method::tfidf_flavor;
    std::size_t default_n = 10;
};

/// Status code plus JSON body; the HTTP layer is a thin wrapper over these.
struct Response {
    int status = 200;
    json body;
};

/// Files inside the data directory.
struct DataLayout {
    std::filesystem::path root;

    std::filesystem::path foods() const { return root / "foods.json"; }
    std::filesystem::path lexicon() const { return root / "bitter_lexicon.csv"; }
    std::filesystem::path weights() const { return root / "weights.json"; }
    std::filesystem::path ratings() const { return root / "ratings.csv"; }
    std::filesystem::path survey() const { return root / "survey.csv"; }
    std::filesystem::path calibration() const { return root / "calibration.json"; }
};

/// The live store behind the HTTP API. Readers share a lock; every mutation
/// takes it exclusively and is appended to the data directory before the
/// lock is released. The MF model is retrained lazily on the first MF request
/// after a rating write.
class AppState {
public:
    /// Throws flavorrec::Error on a missing or corrupt data directory.
    AppState(std::filesystem::path data_dir, ServiceConfig config = {});

    AppState(const AppState&) = delete;
    AppState& operator=(const AppState&) = delete;

    Response list_dishes(std::size_t offset, std::size_t limit) const;
    Response get_dish(const DishId& id) const;
    Response post_rating(const json& body);
    Response get_recommendations(const UserId& user, const std::optional<std::string>& method,
                                 std::optional<std::size_t> n) const;
    Response post_survey(const json& body);
    Response calibrate();
    Response evaluate(std::optional<double> split, std::optional<std::uint64_t> seed) const;

    std::size_t rating_count() const;
    std::size_t survey_count() const;
    std::optional<CalibrationTable> calibration() const;
    FlavorProfile profile(const DishId& id) const;

private:
    void rebuild_flavor_index();
    std::vector<Rating> ratings_snapshot() const;  // caller holds mutex_
    void ensure_mf_model() const;                  // caller holds mutex_ (shared)

    DataLayout layout_;
    ServiceConfig config_;

    std::vector<FoodItem> items_;
    std::map<DishId, std::size_t> item_pos_;
    ProfileMap raw_profiles_;

    mutable std::shared_mutex mutex_;
    ProfileMap profiles_;
    std::optional<CalibrationTable> calibration_;
    std::map<std::pair<UserId, DishId>, int> ratings_;
    std::vector<SurveyResponse> survey_;
    std::uint64_t ratings_generation_ = 0;
    TagVocabulary vocabulary_;
    DishIndex tag_index_;
    DishIndex flavor_index_;

    mutable std::mutex mf_mutex_;
    mutable std::optional<LatentFactors> mf_model_;
    mutable std::uint64_t mf_generation_ = 0;
};

}  // namespace flavorrec::service
