#include <benchmark/benchmark.h>

#include <cmath>

#include "flavorrec/flavor.hpp"
#include "flavorrec/food_data.hpp"

namespace {

std::vector<flavorrec::FoodItem> sample() {
    const std::filesystem::path dir = FLAVORREC_DATA_DIR;
    flavorrec::FoodLoadOptions options;
    options.lexicon = flavorrec::load_bitter_lexicon(dir / "bitter_lexicon.csv");
    return flavorrec::load_food_db(dir / "sample_foods.json", options);
}

void BM_FlavorProfiles(benchmark::State& state) {
    const auto items = sample();
    for (auto _ : state) benchmark::DoNotOptimize(flavorrec::flavor_profiles(items));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(items.size()));
}
BENCHMARK(BM_FlavorProfiles);

void BM_ParseFoodDb(benchmark::State& state) {
    const auto text = flavorrec::read_file(std::filesystem::path(FLAVORREC_DATA_DIR) / "sample_foods.json");
    for (auto _ : state) benchmark::DoNotOptimize(flavorrec::parse_food_db(text));
}
BENCHMARK(BM_ParseFoodDb);

void BM_Calibrate(benchmark::State& state) {
    const auto items = sample();
    const auto profiles = flavorrec::flavor_profiles(items);
    std::vector<flavorrec::SurveyResponse> survey;
    for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i) {
        const auto& item = items[i % items.size()];
        auto p = profiles.at(item.id);
        for (auto& s : p.scores) s = std::fmod(s + 0.1 * static_cast<double>(i % 7), 10.0);
        survey.push_back({"s" + std::to_string(i), item.id, p});
    }
    for (auto _ : state) benchmark::DoNotOptimize(flavorrec::calibrate(profiles, survey));
}
BENCHMARK(BM_Calibrate)->Arg(150)->Arg(5000);

}  // namespace
