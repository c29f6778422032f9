#include "flavorrec/cuisine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "flavorrec/error.hpp"

namespace flavorrec {

CuisineModel train_naive_bayes(std::span<const FoodItem> items) {
    std::map<std::string, std::vector<const FoodItem*>> by_class;
    std::set<std::string> vocab;
    for (const auto& item : items) {
        if (!item.cuisine || item.cuisine->empty()) continue;
        by_class[*item.cuisine].push_back(&item);
        vocab.insert(item.tags.begin(), item.tags.end());
    }
    if (by_class.size() < 2) throw InvalidArgument("naive Bayes needs at least two distinct cuisine labels");

    CuisineModel model;
    model.vocabulary_.assign(vocab.begin(), vocab.end());
    std::map<std::string, std::size_t> tag_index;
    for (std::size_t t = 0; t < model.vocabulary_.size(); ++t) tag_index[model.vocabulary_[t]] = t;

    std::size_t total = 0;
    for (const auto& [_, members] : by_class) total += members.size();

    for (const auto& [label, members] : by_class) {
        model.classes_.push_back(label);
        model.priors_.push_back(static_cast<double>(members.size()) / static_cast<double>(total));
        std::vector<std::size_t> counts(model.vocabulary_.size(), 0);
        for (const auto* item : members) {
            const std::set<std::string> unique(item->tags.begin(), item->tags.end());
            for (const auto& tag : unique) ++counts[tag_index.at(tag)];
        }
        std::vector<double> presence(counts.size());
        for (std::size_t t = 0; t < counts.size(); ++t)
            presence[t] = (static_cast<double>(counts[t]) + 1.0) / (static_cast<double>(members.size()) + 2.0);
        model.presence_.push_back(std::move(presence));
    }
    return model;
}

CuisinePrediction classify_cuisine(const CuisineModel& model, std::span<const std::string> tags) {
    if (tags.empty()) throw InvalidArgument("cannot classify an empty tag set");
    const std::set<std::string> present(tags.begin(), tags.end());
    const auto& vocab = model.vocabulary();

    std::vector<double> log_post(model.classes().size());
    for (std::size_t c = 0; c < log_post.size(); ++c) {
        double lp = std::log(model.prior(c));
        for (std::size_t t = 0; t < vocab.size(); ++t) {
            const double p = model.presence(c, t);
            lp += present.contains(vocab[t]) ? std::log(p) : std::log1p(-p);
        }
        log_post[c] = lp;
    }

    // classes() is sorted, so the first maximum is the lexicographic tie winner.
    std::size_t best = 0;
    for (std::size_t c = 1; c < log_post.size(); ++c)
        if (log_post[c] > log_post[best]) best = c;

    const double max_lp = log_post[best];
    double norm = 0;
    for (double lp : log_post) norm += std::exp(lp - max_lp);

    CuisinePrediction out;
    out.posteriors.reserve(log_post.size());
    for (double lp : log_post) out.posteriors.push_back(std::exp(lp - max_lp) / norm);
    out.cuisine = model.classes()[best];
    out.posterior = out.posteriors[best];
    return out;
}

}  // namespace flavorrec
