#include "flavorrec/tfidf.hpp"

#include <cmath>
#include <set>

#include "flavorrec/error.hpp"

namespace flavorrec {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::optional<std::size_t> TagVocabulary::index_of(const std::string& tag) const {
    const auto it = index_.find(tag);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

TagVocabulary build_vocabulary(std::span<const FoodItem> items) {
    if (items.empty()) throw InvalidArgument("cannot build a tag vocabulary from zero dishes");

    std::map<std::string, std::size_t> df;
    for (const auto& item : items) {
        const std::set<std::string> unique(item.tags.begin(), item.tags.end());
        for (const auto& tag : unique) ++df[tag];
    }

    TagVocabulary v;
    v.dish_count_ = items.size();
    v.tags_.reserve(df.size());
    v.df_.reserve(df.size());
    std::uint64_t h = 14695981039346656037ULL;
    for (const auto& [tag, count] : df) {
        v.index_.emplace(tag, v.tags_.size());
        v.tags_.push_back(tag);
        v.df_.push_back(count);
        h = fnv1a(h, tag);
        h = fnv1a(h, std::string_view("\0", 1));
    }
    v.fingerprint_ = fnv1a(h, std::to_string(v.dish_count_));
    return v;
}

DishVector tfidf_vectorize(const FoodItem& item, const TagVocabulary& v, double log_base) {
    if (!(log_base > 0) || log_base == 1) throw InvalidArgument("log base must be positive and not 1");
    DishVector out;
    out.vocabulary = v.fingerprint();
    const double n = static_cast<double>(v.dish_count());
    const double scale = std::log(log_base);
    const std::set<std::string> unique(item.tags.begin(), item.tags.end());
    for (const auto& tag : unique) {
        const auto idx = v.index_of(tag);
        if (!idx) throw ValidationError("dish '" + item.id + "': tag '" + tag + "' is not in the vocabulary");
        const double df = static_cast<double>(v.document_frequency(*idx));
        out.weights.emplace_back(*idx, std::log(n / df) / scale);
    }
    if (out.weights.empty()) throw ValidationError("dish '" + item.id + "' shares no tag with the vocabulary");
    std::sort(out.weights.begin(), out.weights.end());
    return out;
}

DishVector extend_with_flavor(DishVector vec, const FlavorProfile& p) {
    if (vec.flavor) throw InvalidArgument("dish vector already carries a flavour block");
    vec.flavor = p.scores;
    return vec;
}

void DishIndex::insert(const DishId& id, DishVector vec) {
    const bool flavored = vec.flavor.has_value();
    if (has_flavor_ && *has_flavor_ != flavored)
        throw InvalidArgument("dish index mixes vectors with and without flavour blocks");
    if (!vectors_.empty() && vectors_.begin()->second.vocabulary != vec.vocabulary)
        throw InvalidArgument("dish index mixes vectors from different vocabularies");
    has_flavor_ = flavored;
    vectors_.insert_or_assign(id, std::move(vec));
}

const DishVector& DishIndex::at(const DishId& id) const {
    const auto* v = find(id);
    if (v == nullptr) throw NotFound("no vector for dish '" + id + "'");
    return *v;
}

const DishVector* DishIndex::find(const DishId& id) const {
    const auto it = vectors_.find(id);
    return it == vectors_.end() ? nullptr : &it->second;
}

DishIndex build_index(std::span<const FoodItem> items, const TagVocabulary& v, const ProfileMap* profiles) {
    DishIndex index;
    for (const auto& item : items) {
        auto vec = tfidf_vectorize(item, v);
        if (profiles != nullptr) {
            const auto it = profiles->find(item.id);
            if (it == profiles->end()) throw ValidationError("dish '" + item.id + "' has no flavour profile");
            vec = extend_with_flavor(std::move(vec), it->second);
        }
        index.insert(item.id, std::move(vec));
    }
    return index;
}

}  // namespace flavorrec
