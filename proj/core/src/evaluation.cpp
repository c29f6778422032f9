#include "flavorrec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "flavorrec/content.hpp"
#include "flavorrec/error.hpp"
#include "flavorrec/tfidf.hpp"
#include "json_util.hpp"

namespace flavorrec {

std::string_view method_key(Method m) {
    switch (m) {
        case Method::matrix_factorization: return "mf";
        case Method::tfidf: return "tfidf";
        case Method::tfidf_flavor: return "tfidf-flavour";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view key) {
    for (auto m : kAllMethods)
        if (method_key(m) == key) return m;
    return std::nullopt;
}

std::string_view method_label(Method m) {
    switch (m) {
        case Method::matrix_factorization: return "Matrix Factorisation";
        case Method::tfidf: return "TF-IDF";
        case Method::tfidf_flavor: return "TF-IDF with flavour";
    }
    return "?";
}

double rmse(std::span<const PredictionPair> predictions) {
    if (predictions.empty()) throw InvalidArgument("rmse of an empty prediction list");
    double sse = 0;
    for (const auto& p : predictions) sse += (p.predicted - p.actual) * (p.predicted - p.actual);
    return std::sqrt(sse / static_cast<double>(predictions.size()));
}

RatingSplit split_ratings(std::span<const Rating> ratings, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0 && train_fraction < 1)) throw InvalidArgument("train fraction must be in (0, 1)");

    std::map<UserId, std::vector<Rating>> by_user;
    for (const auto& r : ratings) by_user[r.user_id].push_back(r);

    std::mt19937_64 rng(seed);
    RatingSplit split;
    for (auto& [_, rs] : by_user) {
        std::sort(rs.begin(), rs.end(), [](const Rating& a, const Rating& b) { return a.dish_id < b.dish_id; });
        std::shuffle(rs.begin(), rs.end(), rng);
        const auto n = static_cast<long long>(rs.size());
        const auto keep = std::clamp(std::llround(train_fraction * static_cast<double>(n)), 1LL, n);
        for (long long i = 0; i < n; ++i) (i < keep ? split.train : split.test).push_back(rs[static_cast<std::size_t>(i)]);
    }
    return split;
}

const MethodResult* EvaluationReport::find(Method m) const {
    for (const auto& r : results)
        if (r.method == m) return &r;
    return nullptr;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                const std::size_t end = std::min(count, (w + 1) * chunk);
                for (std::size_t i = w * chunk; i < end; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double mean_score(std::span<const Rating> ratings) {
    double s = 0;
    for (const auto& r : ratings) s += r.score;
    return s / static_cast<double>(ratings.size());
}

std::string describe_split(const EvaluationConfig& c) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(2);
    if (c.target == EvaluationTarget::train)
        ss << "train split (fraction " << c.train_fraction << ", per-user stratified)";
    else
        ss << "held-out split (train fraction " << c.train_fraction << ", per-user stratified)";
    return ss.str();
}

}  // namespace

EvaluationReport evaluate_methods(std::span<const FoodItem> items, std::span<const Rating> ratings,
                                  const ProfileMap& profiles, const EvaluationConfig& config) {
    if (config.methods.empty()) throw InvalidArgument("no methods selected for evaluation");
    if (config.workers == 0) throw InvalidArgument("workers must be >= 1");
    validate(config.flavor_mode);

    const auto split = split_ratings(ratings, config.train_fraction, config.seed);
    const auto& evaluated = config.target == EvaluationTarget::train ? split.train : split.test;
    if (evaluated.empty()) throw InvalidArgument("the evaluated split contains no ratings");
    const double train_mean = mean_score(split.train);

    EvaluationReport report;
    report.seed = config.seed;
    report.train_size = split.train.size();
    report.evaluated_size = evaluated.size();
    report.split_description = describe_split(config);

    std::map<UserId, std::vector<Rating>> history;
    for (const auto& r : split.train) history[r.user_id].push_back(r);

    const bool needs_content = std::any_of(config.methods.begin(), config.methods.end(),
                                           [](Method m) { return m != Method::matrix_factorization; });
    std::optional<TagVocabulary> vocab;
    if (needs_content) vocab = build_vocabulary(items);

    for (const auto method : config.methods) {
        MethodResult result;
        result.method = method;
        std::vector<PredictionPair> preds(evaluated.size());
        std::vector<char> fell_back(evaluated.size(), 0);

        if (method == Method::matrix_factorization) {
            const auto model = train_mf(split.train, config.mf);
            for (std::size_t i = 0; i < evaluated.size(); ++i) {
                const auto& r = evaluated[i];
                const auto& f = model.factors;
                double p = train_mean;
                if (f.user_index().contains(r.user_id) && f.item_index().contains(r.dish_id))
                    p = predict_mf(f, r.user_id, r.dish_id);
                else
                    fell_back[i] = 1;
                preds[i] = {p, static_cast<double>(r.score)};
            }
        } else {
            const bool flavored = method == Method::tfidf_flavor;
            const auto index = build_index(items, *vocab, flavored ? &profiles : nullptr);
            const auto mode = flavored ? config.flavor_mode : SimilarityMode::tags_only();
            parallel_for(evaluated.size(), config.workers, [&](std::size_t i) {
                const auto& r = evaluated[i];
                const auto h = history.find(r.user_id);
                if (h == history.end()) {
                    preds[i] = {train_mean, static_cast<double>(r.score)};
                    fell_back[i] = 1;
                    return;
                }
                const auto p = predict_content(h->second, r.dish_id, index, mode);
                preds[i] = {p.score, static_cast<double>(r.score)};
                fell_back[i] = p.fallback ? 1 : 0;
            });
        }
        result.rmse = rmse(preds);
        result.predictions = preds.size();
        result.fallbacks = static_cast<std::size_t>(std::count(fell_back.begin(), fell_back.end(), 1));
        report.results.push_back(result);
    }

    const double eval_mean = mean_score(evaluated);
    std::vector<PredictionPair> baseline;
    baseline.reserve(evaluated.size());
    for (const auto& r : evaluated) baseline.push_back({eval_mean, static_cast<double>(r.score)});
    report.baseline_rmse = rmse(baseline);
    return report;
}

std::string format_report_table(const EvaluationReport& report) {
    std::ostringstream ss;
    ss << "# " << report.split_description << ", seed " << report.seed << ", idf = ln(N/df)\n";
    ss << std::left << std::setw(24) << "Method" << "RMSE\n";
    ss << std::fixed << std::setprecision(3);
    for (const auto& r : report.results) ss << std::left << std::setw(24) << method_label(r.method) << r.rmse << '\n';
    ss << "# baseline (constant mean): " << report.baseline_rmse << '\n';
    return ss.str();
}

std::string report_to_json(const EvaluationReport& report) {
    detail::json doc = {
        {"seed", report.seed},
        {"split", report.split_description},
        {"train_size", report.train_size},
        {"evaluated_size", report.evaluated_size},
        {"idf_log", "ln"},
        {"baseline_rmse", report.baseline_rmse},
        {"results", detail::json::array()},
    };
    for (const auto& r : report.results) {
        doc["results"].push_back({{"method", method_key(r.method)},
                                  {"label", method_label(r.method)},
                                  {"rmse", r.rmse},
                                  {"predictions", r.predictions},
                                  {"fallbacks", r.fallbacks}});
    }
    return doc.dump(2) + "\n";
}

}  // namespace flavorrec
