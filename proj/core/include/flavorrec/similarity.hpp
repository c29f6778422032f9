#pragma once

#include <string_view>

#include "flavorrec/tfidf.hpp"

namespace flavorrec {

struct SimilarityMode {
    enum class Kind { tags_only, blended, appended };

    Kind kind = Kind::tags_only;
    double tag_weight = 0.5;
    double flavor_weight = 0.5;

    static SimilarityMode tags_only() { return {Kind::tags_only, 1.0, 0.0}; }
    static SimilarityMode blended(double tag_weight = 0.5, double flavor_weight = 0.5) {
        return {Kind::blended, tag_weight, flavor_weight};
    }
    static SimilarityMode appended() { return {Kind::appended, 0.0, 0.0}; }

    bool needs_flavor() const { return kind != Kind::tags_only; }
};

/// Throws InvalidArgument unless blended weights are >= 0 with positive sum.
void validate(const SimilarityMode& mode);

/// "tags", "blended", "appended".
SimilarityMode parse_similarity_mode(std::string_view name);
std::string_view similarity_mode_name(const SimilarityMode& mode);

double cosine(std::span<const std::pair<std::size_t, double>> a, std::span<const std::pair<std::size_t, double>> b);
double cosine(const FlavorBlock& a, const FlavorBlock& b);

/// Cosine-based similarity in [0, 1]; zero vectors have similarity 0 with
/// everything.
///   tags_only: cosine of the sparse parts
///   blended:   (wt * cos_tags + wf * cos_flavor) / (wt + wf)
///   appended:  cosine of the concatenated [tags | flavour] vector
double similarity(const DishVector& a, const DishVector& b, const SimilarityMode& mode);

}  // namespace flavorrec
