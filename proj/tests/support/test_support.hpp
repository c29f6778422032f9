#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <random>
#include <string>

#include "flavorrec/food_data.hpp"

namespace flavorrec::testing {

inline std::filesystem::path data_dir() { return FLAVORREC_DATA_DIR; }
inline std::filesystem::path sample_foods() { return data_dir() / "sample_foods.json"; }
inline std::filesystem::path sample_lexicon() { return data_dir() / "bitter_lexicon.csv"; }

inline std::vector<FoodItem> load_sample_foods() {
    FoodLoadOptions options;
    options.lexicon = load_bitter_lexicon(sample_lexicon());
    return load_food_db(sample_foods(), options);
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        path_ = std::filesystem::temp_directory_path() /
                ("flavorrec-test-" + std::to_string(stamp) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

/// A dish with the given nutrition and a single tag.
inline FoodItem dish(std::string id, NutritionFacts n = {}, std::vector<std::string> tags = {"tag"}) {
    FoodItem item;
    item.id = std::move(id);
    item.name = item.id;
    item.tags = std::move(tags);
    item.nutrition = n;
    return item;
}

}  // namespace flavorrec::testing
