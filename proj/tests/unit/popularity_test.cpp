#include <gtest/gtest.h>

#include <random>

#include "../oracle/reference.hpp"
#include "sfair/error.hpp"
#include "sfair/popularity.hpp"

using namespace sfair;

namespace {

PopularityRaw raw(std::string id, std::uint64_t poi, std::uint64_t ugc, std::optional<double> gt = 50.0) {
    PopularityRaw r;
    r.city_id = std::move(id);
    r.poi_count = poi;
    r.ugc_count = ugc;
    r.attraction_reviews = ugc / 2;
    r.attraction_photos = ugc / 4;
    r.gt_index = gt;
    return r;
}

}  // namespace

TEST(PopularityComponents, Normalization) {
    const std::vector<PopularityRaw> corpus{raw("a", 10, 100, 0), raw("b", 20, 300, 50),
                                            raw("c", 30, 200, 100)};
    const auto c = normalize_components(corpus);
    EXPECT_DOUBLE_EQ(c.at("b").poi, 0.5);
    EXPECT_DOUBLE_EQ(c.at("b").ugc, 1.0);
    EXPECT_DOUBLE_EQ(*c.at("b").trends, 0.5);
    EXPECT_DOUBLE_EQ(c.at("a").poi, 0.0);
    EXPECT_DOUBLE_EQ(c.at("c").poi, 1.0);
}

TEST(PopularityComponents, PublishedRange) {
    const auto c = normalize_components(std::vector{raw("lo", 5, 1), raw("hi", 8999, 2)});
    EXPECT_EQ(c.at("hi").poi, 1.0);
    EXPECT_EQ(c.at("lo").poi, 0.0);
}

TEST(PopularityComponents, DegenerateAndErrors) {
    const auto one = normalize_components(std::vector{raw("solo", 7, 7)});
    EXPECT_EQ(one.at("solo").poi, 0.0);
    EXPECT_EQ(one.at("solo").ugc, 0.0);
    EXPECT_EQ(*one.at("solo").trends, 0.0);
    EXPECT_THROW(normalize_components(std::vector<PopularityRaw>{}), DomainError);
    EXPECT_THROW(normalize_components(std::vector{raw("x", 1, 1, 120.0)}), DomainError);
    EXPECT_THROW(normalize_components(std::vector{raw("x", 1, 1), raw("x", 2, 2)}), DomainError);
}

TEST(PopularityComponents, TrendsOnlyOverCitiesThatHaveThem) {
    const auto c = normalize_components(
        std::vector{raw("a", 1, 1, 20.0), raw("b", 2, 2, std::nullopt), raw("c", 3, 3, 60.0)});
    EXPECT_FALSE(c.at("b").trends.has_value());
    EXPECT_EQ(*c.at("a").trends, 0.0);
    EXPECT_EQ(*c.at("c").trends, 1.0);
}

TEST(PopularityIndex, Examples) {
    const auto w = default_weights().popularity;
    EXPECT_EQ(popularity_index({0, 0, 0.0}, w), 0.0);
    EXPECT_NEAR(popularity_index({1, 1, 1.0}, w), 1.0, 1e-12);
    EXPECT_NEAR(popularity_index({1, 0, 0.0}, w), 0.469, 1e-12);
    // without trends the remaining weights are rescaled
    EXPECT_NEAR(popularity_index({1, 0, std::nullopt}, w), 0.469 / 0.794, 1e-12);
    EXPECT_THROW(popularity_index({1.2, 0, 0.0}, w), DomainError);
}

TEST(PopularityIndex, MonotoneInEachComponent) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    const auto w = default_weights().popularity;
    for (int k = 0; k < 500; ++k) {
        PopularityComponents c{u(rng), u(rng), u(rng)};
        const double base = popularity_index(c, w);
        ASSERT_GE(base, 0.0);
        ASSERT_LE(base, 1.0);
        c.poi = std::min(1.0, c.poi + 0.1);
        ASSERT_GE(popularity_index(c, w), base);
    }
}

TEST(UgcProxy, ProportionalCountsCorrelatePerfectly) {
    const std::vector<PopularityRaw> corpus{raw("a", 1, 400), raw("b", 1, 800), raw("c", 1, 1200),
                                            raw("d", 1, 4000)};
    const auto diag = ugc_proxy_check(corpus);
    ASSERT_TRUE(diag.has_value());
    ASSERT_EQ(diag->size(), 3u);
    for (const auto& d : *diag) EXPECT_NEAR(d.result.r, 1.0, 1e-9);
}

TEST(UgcProxy, NoisyPhotosStayAbovePointNine) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::uint64_t> reviews(1000, 500000);
    std::normal_distribution<double> noise(0.0, 5000.0);
    std::vector<PopularityRaw> corpus;
    std::vector<double> rv, ph;
    for (int i = 0; i < 40; ++i) {
        PopularityRaw r = raw("c" + std::to_string(i), 10, 0);
        r.attraction_reviews = reviews(rng);
        r.attraction_photos = static_cast<std::uint64_t>(std::max(0.0, r.attraction_reviews + noise(rng)));
        r.ugc_count = r.attraction_reviews * 2;
        rv.push_back(static_cast<double>(r.attraction_reviews));
        ph.push_back(static_cast<double>(r.attraction_photos));
        corpus.push_back(r);
    }
    const auto diag = ugc_proxy_check(corpus);
    ASSERT_TRUE(diag.has_value());
    const auto& reviews_photos = (*diag)[2];
    EXPECT_GT(reviews_photos.result.r, 0.9);
    EXPECT_NEAR(reviews_photos.result.r, oracle::pearson(rv, ph), 1e-9);
    EXPECT_TRUE(reviews_photos.result.significant);
}

TEST(UgcProxy, SkippedForTwoCities) {
    EXPECT_FALSE(ugc_proxy_check(std::vector{raw("a", 1, 1), raw("b", 2, 2)}).has_value());
}
