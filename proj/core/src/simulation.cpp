#include "flavorrec/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "flavorrec/error.hpp"

namespace flavorrec {

namespace {

double distance(const FlavorProfile& a, const FlavorProfile& b) {
    double s = 0;
    for (auto f : kAllFlavors) s += (a[f] - b[f]) * (a[f] - b[f]);
    return std::sqrt(s);
}

std::string user_name(std::size_t u) {
    std::ostringstream ss;
    ss << "sim" << std::setw(3) << std::setfill('0') << u;
    return ss.str();
}

}  // namespace

std::vector<Rating> simulate_flavor_users(const ProfileMap& profiles, const SimulationConfig& config) {
    if (profiles.size() < 2) throw InvalidArgument("simulation needs at least two dish profiles");
    if (config.ratings_per_user == 0 || config.ratings_per_user > profiles.size())
        throw InvalidArgument("ratings_per_user must be in [1, number of dishes]");
    if (!(config.noise_sigma >= 0) || !(config.ideal_jitter >= 0))
        throw InvalidArgument("simulation noise must be >= 0");

    std::vector<std::pair<DishId, FlavorProfile>> dishes(profiles.begin(), profiles.end());
    double d_max = 0;
    for (std::size_t i = 0; i < dishes.size(); ++i)
        for (std::size_t j = i + 1; j < dishes.size(); ++j)
            d_max = std::max(d_max, distance(dishes[i].second, dishes[j].second));
    if (d_max == 0) d_max = 1;

    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> jitter(0.0, config.ideal_jitter);
    std::normal_distribution<double> noise(0.0, config.noise_sigma);
    std::uniform_int_distribution<std::size_t> pick(0, dishes.size() - 1);

    std::vector<Rating> out;
    out.reserve(config.users * config.ratings_per_user);
    std::vector<std::size_t> order(dishes.size());
    for (std::size_t u = 0; u < config.users; ++u) {
        FlavorProfile ideal = dishes[pick(rng)].second;
        for (auto f : kAllFlavors) ideal[f] = std::clamp(ideal[f] + jitter(rng), kFlavorMin, kFlavorMax);

        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        const auto name = user_name(u);
        for (std::size_t k = 0; k < config.ratings_per_user; ++k) {
            const auto& [id, profile] = dishes[order[k]];
            const double mean = config.intercept - config.slope * distance(profile, ideal) / d_max;
            const double score = std::round(mean + (config.noise_sigma > 0 ? noise(rng) : 0.0));
            out.push_back({name, id, static_cast<int>(std::clamp(score, 1.0, 5.0))});
        }
    }
    return out;
}

}  // namespace flavorrec
