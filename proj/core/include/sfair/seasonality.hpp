#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfair/date.hpp"
#include "sfair/numerics.hpp"
#include "sfair/weights.hpp"

namespace sfair {

inline constexpr unsigned kMonths = 12;

// Month-indexed array, element 0 is January.
template <typename T>
using MonthArray = std::array<T, kMonths>;

struct MonthlyVisitorSeries {
    std::string city_id;
    MonthArray<std::optional<double>> avc;

    bool complete() const noexcept;
    double total() const noexcept;
    bool operator==(const MonthlyVisitorSeries&) const = default;
};

// City-level average daily rate per date.
struct DailyRateSeries {
    std::string city_id;
    std::map<Date, double> entries;

    std::vector<double> month_values(unsigned month) const;
    bool operator==(const DailyRateSeries&) const = default;
};

struct SeasonalitySet {
    std::optional<double> gini_avc;
    MonthArray<std::optional<double>> gini_adr{};
    MonthArray<std::optional<double>> index{};
};

void check_month(unsigned month);

// Gini over the twelve monthly arrival counts. Throws on an incomplete
// series or a zero total.
double gini_avc(const MonthlyVisitorSeries& series);

// Gini over the daily rates of one month; nullopt with fewer than two days.
std::optional<double> gini_adr_month(const DailyRateSeries& series, unsigned month);

// Weighted sum of the Gini components. A missing component drops out and the
// other weight is rescaled to one; nullopt when both are missing.
std::optional<double> seasonality_index(std::optional<double> gini_avc,
                                        std::optional<double> gini_adr,
                                        const SeasonalityWeights& weights);

struct SeasonalGinis {
    std::optional<double> gini_avc;
    MonthArray<std::optional<double>> gini_adr{};
};

SeasonalGinis compute_ginis(const MonthlyVisitorSeries* avc, const DailyRateSeries* adr);
SeasonalitySet seasonality_set(const SeasonalGinis& ginis, const SeasonalityWeights& weights);

MonthArray<std::optional<double>> monthly_mean_adr(const DailyRateSeries& series);

// Correlation between the 12 monthly arrival counts and monthly mean rates.
CorrelationResult adr_avc_diagnostics(std::span<const double> avc, std::span<const double> adr);

}  // namespace sfair
