#include <benchmark/benchmark.h>

#include <random>

#include "flavorrec/content.hpp"
#include "flavorrec/evaluation.hpp"
#include "flavorrec/flavor.hpp"
#include "flavorrec/food_data.hpp"
#include "flavorrec/matrix_factorization.hpp"
#include "flavorrec/simulation.hpp"

namespace {

struct Corpus {
    std::vector<flavorrec::FoodItem> items;
    flavorrec::ProfileMap profiles;
    flavorrec::TagVocabulary vocabulary;
    flavorrec::DishIndex index;
    std::vector<flavorrec::Rating> ratings;

    Corpus() {
        const std::filesystem::path dir = FLAVORREC_DATA_DIR;
        flavorrec::FoodLoadOptions options;
        options.lexicon = flavorrec::load_bitter_lexicon(dir / "bitter_lexicon.csv");
        items = flavorrec::load_food_db(dir / "sample_foods.json", options);
        profiles = flavorrec::flavor_profiles(items);
        vocabulary = flavorrec::build_vocabulary(items);
        index = flavorrec::build_index(items, vocabulary, &profiles);
        ratings = flavorrec::simulate_flavor_users(profiles);
    }
};

const Corpus& corpus() {
    static const Corpus c;
    return c;
}

void BM_Similarity(benchmark::State& state) {
    const auto& c = corpus();
    const auto mode = state.range(0) == 0   ? flavorrec::SimilarityMode::tags_only()
                      : state.range(0) == 1 ? flavorrec::SimilarityMode::blended()
                                            : flavorrec::SimilarityMode::appended();
    for (auto _ : state)
        for (const auto& [a, va] : c.index.vectors())
            for (const auto& [b, vb] : c.index.vectors()) benchmark::DoNotOptimize(flavorrec::similarity(va, vb, mode));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(c.index.size() * c.index.size()));
}
BENCHMARK(BM_Similarity)->Arg(0)->Arg(1)->Arg(2);

void BM_PredictContent(benchmark::State& state) {
    const auto& c = corpus();
    std::vector<flavorrec::Rating> history(c.ratings.begin(), c.ratings.begin() + 15);
    for (auto _ : state)
        for (const auto& item : c.items)
            benchmark::DoNotOptimize(
                flavorrec::predict_content(history, item.id, c.index, flavorrec::SimilarityMode::blended()));
}
BENCHMARK(BM_PredictContent);

void BM_TrainMf(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> value(1, 5), coin(0, 1);
    std::vector<flavorrec::Observation> cells;
    const auto users = static_cast<std::size_t>(state.range(0));
    for (std::size_t u = 0; u < users; ++u)
        for (std::size_t i = 0; i < 200; ++i)
            if (coin(rng) < 0.2) cells.push_back({"u" + std::to_string(u), "i" + std::to_string(i), value(rng)});
    flavorrec::MfConfig config;
    config.epochs = 10;
    for (auto _ : state) benchmark::DoNotOptimize(flavorrec::train_mf(cells, config));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(cells.size() * config.epochs));
}
BENCHMARK(BM_TrainMf)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EvaluateMethods(benchmark::State& state) {
    const auto& c = corpus();
    flavorrec::EvaluationConfig config;
    config.workers = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(flavorrec::evaluate_methods(c.items, c.ratings, c.profiles, config));
}
BENCHMARK(BM_EvaluateMethods)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
