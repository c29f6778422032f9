#include "flavorrec/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "flavorrec/error.hpp"

namespace flavorrec {

using SparseWeights = std::span<const std::pair<std::size_t, double>>;

namespace {

double squared_norm(SparseWeights a) {
    double s = 0;
    for (const auto& [_, w] : a) s += w * w;
    return s;
}

double squared_norm(const FlavorBlock& a) {
    double s = 0;
    for (double v : a) s += v * v;
    return s;
}

double sparse_dot(SparseWeights a, SparseWeights b) {
    double dot = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            dot += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return dot;
}

double dense_dot(const FlavorBlock& a, const FlavorBlock& b) {
    double dot = 0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return dot;
}

double ratio(double dot, double norm_a2, double norm_b2) {
    if (norm_a2 <= 0 || norm_b2 <= 0) return 0.0;
    return std::clamp(dot / std::sqrt(norm_a2 * norm_b2), 0.0, 1.0);
}

}  // namespace

void validate(const SimilarityMode& mode) {
    if (mode.kind != SimilarityMode::Kind::blended) return;
    if (!(mode.tag_weight >= 0) || !(mode.flavor_weight >= 0) || !(mode.tag_weight + mode.flavor_weight > 0) ||
        !std::isfinite(mode.tag_weight + mode.flavor_weight))
        throw InvalidArgument("blended similarity weights must be >= 0 with a positive sum");
}

SimilarityMode parse_similarity_mode(std::string_view name) {
    if (name == "tags") return SimilarityMode::tags_only();
    if (name == "blended") return SimilarityMode::blended();
    if (name == "appended") return SimilarityMode::appended();
    throw InvalidArgument("unknown similarity mode '" + std::string(name) + "'");
}

std::string_view similarity_mode_name(const SimilarityMode& mode) {
    switch (mode.kind) {
        case SimilarityMode::Kind::tags_only: return "tags";
        case SimilarityMode::Kind::blended: return "blended";
        case SimilarityMode::Kind::appended: return "appended";
    }
    return "?";
}

double cosine(SparseWeights a, SparseWeights b) { return ratio(sparse_dot(a, b), squared_norm(a), squared_norm(b)); }

double cosine(const FlavorBlock& a, const FlavorBlock& b) {
    return ratio(dense_dot(a, b), squared_norm(a), squared_norm(b));
}

double similarity(const DishVector& a, const DishVector& b, const SimilarityMode& mode) {
    if (a.vocabulary != b.vocabulary) throw InvalidArgument("dish vectors come from different vocabularies");
    if (mode.needs_flavor() && (!a.flavor || !b.flavor))
        throw InvalidArgument("flavour similarity needs flavour blocks on both vectors");

    switch (mode.kind) {
        case SimilarityMode::Kind::tags_only:
            return cosine(a.weights, b.weights);
        case SimilarityMode::Kind::blended: {
            validate(mode);
            const double tags = cosine(a.weights, b.weights);
            const double flavor = cosine(*a.flavor, *b.flavor);
            return std::clamp((mode.tag_weight * tags + mode.flavor_weight * flavor) /
                                  (mode.tag_weight + mode.flavor_weight),
                              0.0, 1.0);
        }
        case SimilarityMode::Kind::appended: {
            const double dot = sparse_dot(a.weights, b.weights) + dense_dot(*a.flavor, *b.flavor);
            return ratio(dot, squared_norm(a.weights) + squared_norm(*a.flavor),
                         squared_norm(b.weights) + squared_norm(*b.flavor));
        }
    }
    return 0.0;
}

}  // namespace flavorrec
