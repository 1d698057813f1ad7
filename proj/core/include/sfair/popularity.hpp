#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfair/numerics.hpp"
#include "sfair/weights.hpp"

namespace sfair {

struct PopularityRaw {
    std::string city_id;
    std::uint64_t poi_count = 0;
    std::uint64_t ugc_count = 0;  // combined reviews and opinions
    std::uint64_t attraction_reviews = 0;
    std::uint64_t attraction_photos = 0;
    std::optional<double> gt_index;  // annualized search interest, [0, 100]

    bool operator==(const PopularityRaw&) const = default;
};

// Corpus min-max normalized components, each in [0, 1]. `trends` is absent
// when the city has no search-interest data.
struct PopularityComponents {
    double poi = 0.0;
    double ugc = 0.0;
    std::optional<double> trends;

    bool operator==(const PopularityComponents&) const = default;
};

std::map<std::string, PopularityComponents> normalize_components(
    std::span<const PopularityRaw> corpus);

// Weighted sum of the components. An absent trends component drops out and
// the remaining weights are rescaled to sum to one.
double popularity_index(const PopularityComponents& components, const PopularityWeights& weights);

struct NamedCorrelation {
    std::string first;
    std::string second;
    CorrelationResult result;
};

// Pairwise correlation among the three UGC counts. Returns nullopt when fewer
// than three cities are available or a series has zero variance.
std::optional<std::vector<NamedCorrelation>> ugc_proxy_check(std::span<const PopularityRaw> corpus);

}  // namespace sfair
