#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace sfair {

// Tolerance for stored (normalized) weight groups.
inline constexpr double kNormalizedSumTolerance = 1e-9;
// Published coefficients are rounded to three decimals; their sums differ
// from one by up to 1e-3. Index functions accept that much slack.
inline constexpr double kPublishedSumTolerance = 2e-3;
// Weight overrides supplied by clients.
inline constexpr double kOverrideSumTolerance = 1e-6;

// A group of nonnegative weights that sum to one within some tolerance.
template <std::size_t N>
struct WeightGroup {
    std::array<double, N> values{};

    double sum() const noexcept {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }

    // Throws DomainError on negative/non-finite entries or |sum - 1| > tolerance.
    void validate(double tolerance, std::string_view group_name) const;

    WeightGroup normalized() const;

    double operator[](std::size_t i) const noexcept { return values[i]; }
    bool operator==(const WeightGroup&) const = default;
};

// (travel time, emissions, cost)
struct TradeoffWeights : WeightGroup<3> {
    double travel_time() const noexcept { return values[0]; }
    double emissions() const noexcept { return values[1]; }
    double cost() const noexcept { return values[2]; }
};

// (points of interest, user-generated content, search trends)
struct PopularityWeights : WeightGroup<3> {
    double poi() const noexcept { return values[0]; }
    double ugc() const noexcept { return values[1]; }
    double trends() const noexcept { return values[2]; }
};

// (annual visitor-count Gini, monthly daily-rate Gini)
struct SeasonalityWeights : WeightGroup<2> {
    double avc() const noexcept { return values[0]; }
    double adr() const noexcept { return values[1]; }
};

// (trade-off index, popularity index, seasonality index)
struct CompositeWeights : WeightGroup<3> {
    double tradeoff() const noexcept { return values[0]; }
    double popularity() const noexcept { return values[1]; }
    double seasonality() const noexcept { return values[2]; }
};

struct WeightConfig {
    TradeoffWeights tradeoff;
    PopularityWeights popularity;
    SeasonalityWeights seasonality;
    CompositeWeights composite;

    void validate(double tolerance) const;
    // Every group divided by its own sum.
    WeightConfig normalized() const;

    bool operator==(const WeightConfig&) const = default;
};

// The survey-derived coefficients, stored verbatim.
WeightConfig default_weights();

// Arithmetic mean of Likert scores; each score must lie in 1..5.
double likert_mean(std::span<const int> scores);

// w_j = a_j / sum(a). Requires >= 2 factors, all > 0.
std::vector<double> normalize_group(std::span<const double> raw_averages);

// JSON form: {"tradeoff": {"travel_time":..,"emissions":..,"cost":..},
//             "popularity": {"poi":..,"ugc":..,"trends":..},
//             "seasonality": {"avc":..,"adr":..},
//             "composite": {"tradeoff":..,"popularity":..,"seasonality":..}}
// Groups absent from the document keep the values of `base`. Present groups
// must name every factor and satisfy `tolerance`.
WeightConfig weights_from_json(const nlohmann::json& doc, const WeightConfig& base,
                               double tolerance);
WeightConfig weights_from_json_text(std::string_view text, const WeightConfig& base,
                                    double tolerance);
nlohmann::json weights_to_json(const WeightConfig& weights);

// Survey columns, one per factor.
inline constexpr std::array<std::string_view, 11> kSurveyColumns = {
    "tradeoff_travel_time", "tradeoff_emissions",     "tradeoff_cost",
    "popularity_poi",       "popularity_ugc",         "popularity_trends",
    "seasonality_avc",      "seasonality_adr",        "composite_tradeoff",
    "composite_popularity", "composite_seasonality",
};

struct SurveyWeights {
    WeightConfig weights;
    // Groups that had no columns in the survey file and kept defaults.
    std::vector<std::string> defaulted_groups;
};

// Derives a WeightConfig from a Likert survey CSV: one row per respondent,
// one column per factor id, integer cells 1..5 (blank = no answer).
SurveyWeights weights_from_survey(std::string_view csv_text, std::string_view file_name);

}  // namespace sfair
