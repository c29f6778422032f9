#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flavorrec/types.hpp"

namespace flavorrec {

class TagVocabulary {
public:
    TagVocabulary() = default;

    const std::vector<std::string>& tags() const { return tags_; }
    std::size_t size() const { return tags_.size(); }
    std::size_t dish_count() const { return dish_count_; }
    std::size_t document_frequency(std::size_t index) const { return df_.at(index); }
    std::optional<std::size_t> index_of(const std::string& tag) const;
    /// Identifies the vocabulary; vectors from different vocabularies cannot be compared.
    std::uint64_t fingerprint() const { return fingerprint_; }

private:
    friend TagVocabulary build_vocabulary(std::span<const FoodItem> items);

    std::vector<std::string> tags_;  // lexicographic
    std::vector<std::size_t> df_;
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t dish_count_ = 0;
    std::uint64_t fingerprint_ = 0;
};

/// Union of all tags, document frequencies and N. Throws InvalidArgument on no items.
TagVocabulary build_vocabulary(std::span<const FoodItem> items);

using FlavorBlock = std::array<double, kFlavorCount>;

struct DishVector {
    /// Sparse TF-IDF part as (tag index, weight), ascending index, weights >= 0.
    std::vector<std::pair<std::size_t, double>> weights;
    std::optional<FlavorBlock> flavor;
    std::uint64_t vocabulary = 0;
};

/// Binary tf times log(N / df). Throws ValidationError if the item has a tag
/// outside the vocabulary or shares no tag with it.
DishVector tfidf_vectorize(const FoodItem& item, const TagVocabulary& v, double log_base = std::numbers::e);

/// Attaches the raw 0-10 profile in canonical order. Throws InvalidArgument if
/// a block is already present.
DishVector extend_with_flavor(DishVector vec, const FlavorProfile& p);

/// Dish id -> vector, all built against one vocabulary. Either every vector
/// carries a flavour block or none does.
class DishIndex {
public:
    DishIndex() = default;

    void insert(const DishId& id, DishVector vec);
    const DishVector& at(const DishId& id) const;
    const DishVector* find(const DishId& id) const;
    bool contains(const DishId& id) const { return vectors_.contains(id); }
    bool has_flavor() const { return has_flavor_.value_or(false); }
    std::size_t size() const { return vectors_.size(); }
    const std::map<DishId, DishVector>& vectors() const { return vectors_; }

private:
    std::map<DishId, DishVector> vectors_;
    std::optional<bool> has_flavor_;
};

/// Vectorizes every item; attaches flavour blocks when `profiles` is given
/// (each item must then have a profile).
DishIndex build_index(std::span<const FoodItem> items, const TagVocabulary& v,
                      const ProfileMap* profiles = nullptr);

}  // namespace flavorrec
