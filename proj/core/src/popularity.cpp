#include "sfair/popularity.hpp"

#include <cmath>

#include "sfair/error.hpp"

namespace sfair {

std::map<std::string, PopularityComponents> normalize_components(
    std::span<const PopularityRaw> corpus) {
    if (corpus.empty()) throw DomainError("popularity normalization of an empty corpus");

    std::vector<double> poi;
    std::vector<double> ugc;
    std::vector<double> trends;
    for (const auto& raw : corpus) {
        poi.push_back(static_cast<double>(raw.poi_count));
        ugc.push_back(static_cast<double>(raw.ugc_count));
        if (raw.gt_index) {
            if (!(*raw.gt_index >= 0.0 && *raw.gt_index <= 100.0)) {
                throw DomainError("search-interest index of " + raw.city_id + " outside [0, 100]");
            }
            trends.push_back(*raw.gt_index);
        }
    }
    const auto poi_range = MinMaxRange::of(poi);
    const auto ugc_range = MinMaxRange::of(ugc);
    const std::optional<MinMaxRange> trends_range =
        trends.empty() ? std::nullopt : std::optional(MinMaxRange::of(trends));

    std::map<std::string, PopularityComponents> out;
    for (const auto& raw : corpus) {
        PopularityComponents c;
        c.poi = poi_range.normalize(static_cast<double>(raw.poi_count));
        c.ugc = ugc_range.normalize(static_cast<double>(raw.ugc_count));
        if (raw.gt_index) c.trends = trends_range->normalize(*raw.gt_index);
        if (!out.emplace(raw.city_id, c).second) {
            throw DomainError("duplicate popularity record for " + raw.city_id);
        }
    }
    return out;
}

double popularity_index(const PopularityComponents& c, const PopularityWeights& weights) {
    weights.validate(kPublishedSumTolerance, "popularity");
    auto check = [](double v) {
        if (!(v >= 0.0 && v <= 1.0)) throw DomainError("popularity component outside [0, 1]");
    };
    check(c.poi);
    check(c.ugc);
    if (c.trends) {
        check(*c.trends);
        return weights.poi() * c.poi + weights.ugc() * c.ugc + weights.trends() * *c.trends;
    }
    const double present = weights.poi() + weights.ugc();
    if (!(present > 0.0)) {
        throw DomainError("popularity index undefined: no weight on the present components");
    }
    return (weights.poi() * c.poi + weights.ugc() * c.ugc) / present;
}

std::optional<std::vector<NamedCorrelation>> ugc_proxy_check(std::span<const PopularityRaw> corpus) {
    if (corpus.size() < 3) return std::nullopt;
    std::vector<double> ugc;
    std::vector<double> reviews;
    std::vector<double> photos;
    for (const auto& raw : corpus) {
        ugc.push_back(static_cast<double>(raw.ugc_count));
        reviews.push_back(static_cast<double>(raw.attraction_reviews));
        photos.push_back(static_cast<double>(raw.attraction_photos));
    }
    std::vector<NamedCorrelation> out;
    try {
        out.push_back({"ugc_count", "attraction_reviews", correlate(ugc, reviews)});
        out.push_back({"ugc_count", "attraction_photos", correlate(ugc, photos)});
        out.push_back({"attraction_reviews", "attraction_photos", correlate(reviews, photos)});
    } catch (const DomainError&) {
        return std::nullopt;
    }
    return out;
}

}  // namespace sfair
