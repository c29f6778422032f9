#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "flavorrec/types.hpp"

namespace flavorrec {

/// Synthetic users whose ratings depend only on flavour: each user has an
/// ideal profile (a random dish's profile plus jitter) and rates a dish
///   clamp(round(intercept - slope * d / d_max + noise), 1, 5)
/// where d is the Euclidean profile distance and d_max the largest distance
/// between any two dish profiles.
struct SimulationConfig {
    std::size_t users = 50;
    std::size_t ratings_per_user = 15;
    double noise_sigma = 0.5;
    double ideal_jitter = 1.0;
    double intercept = 5.0;
    double slope = 4.0;
    std::uint64_t seed = 42;
};

std::vector<Rating> simulate_flavor_users(const ProfileMap& profiles, const SimulationConfig& config = {});

}  // namespace flavorrec
