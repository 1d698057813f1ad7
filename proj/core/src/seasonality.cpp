#include "sfair/seasonality.hpp"

#include <string>

#include "sfair/error.hpp"

namespace sfair {

void check_month(unsigned month) {
    if (month < 1 || month > kMonths) {
        throw DomainError("month must be in 1..12, got " + std::to_string(month));
    }
}

bool MonthlyVisitorSeries::complete() const noexcept {
    for (const auto& v : avc) {
        if (!v) return false;
    }
    return true;
}

double MonthlyVisitorSeries::total() const noexcept {
    double t = 0.0;
    for (const auto& v : avc) t += v.value_or(0.0);
    return t;
}

std::vector<double> DailyRateSeries::month_values(unsigned month) const {
    std::vector<double> out;
    for (const auto& [date, rate] : entries) {
        if (date.month == month) out.push_back(rate);
    }
    return out;
}

double gini_avc(const MonthlyVisitorSeries& series) {
    if (!series.complete()) {
        throw DomainError("visitor series of " + series.city_id + " does not cover 12 months");
    }
    std::vector<double> values;
    for (const auto& v : series.avc) values.push_back(*v);
    return gini(values);
}

std::optional<double> gini_adr_month(const DailyRateSeries& series, unsigned month) {
    check_month(month);
    const auto values = series.month_values(month);
    if (values.size() < 2) return std::nullopt;
    return gini(values);
}

std::optional<double> seasonality_index(std::optional<double> g_avc, std::optional<double> g_adr,
                                        const SeasonalityWeights& weights) {
    weights.validate(kPublishedSumTolerance, "seasonality");
    auto check = [](double g) {
        if (!(g >= 0.0 && g <= 1.0)) throw DomainError("Gini component outside [0, 1]");
    };
    if (g_avc) check(*g_avc);
    if (g_adr) check(*g_adr);
    if (g_avc && g_adr) return weights.avc() * *g_avc + weights.adr() * *g_adr;
    // With one component the rescaled weight is exactly one.
    if (g_avc) return *g_avc;
    if (g_adr) return *g_adr;
    return std::nullopt;
}

SeasonalGinis compute_ginis(const MonthlyVisitorSeries* avc, const DailyRateSeries* adr) {
    SeasonalGinis out;
    if (avc && avc->complete() && avc->total() > 0.0) out.gini_avc = gini_avc(*avc);
    if (adr) {
        for (unsigned m = 1; m <= kMonths; ++m) out.gini_adr[m - 1] = gini_adr_month(*adr, m);
    }
    return out;
}

SeasonalitySet seasonality_set(const SeasonalGinis& ginis, const SeasonalityWeights& weights) {
    SeasonalitySet out;
    out.gini_avc = ginis.gini_avc;
    out.gini_adr = ginis.gini_adr;
    for (unsigned m = 0; m < kMonths; ++m) {
        out.index[m] = seasonality_index(ginis.gini_avc, ginis.gini_adr[m], weights);
    }
    return out;
}

MonthArray<std::optional<double>> monthly_mean_adr(const DailyRateSeries& series) {
    MonthArray<double> sum{};
    MonthArray<std::size_t> count{};
    for (const auto& [date, rate] : series.entries) {
        sum[date.month - 1] += rate;
        ++count[date.month - 1];
    }
    MonthArray<std::optional<double>> out{};
    for (unsigned m = 0; m < kMonths; ++m) {
        if (count[m] > 0) out[m] = sum[m] / static_cast<double>(count[m]);
    }
    return out;
}

CorrelationResult adr_avc_diagnostics(std::span<const double> avc, std::span<const double> adr) {
    if (avc.size() != kMonths || adr.size() != kMonths) {
        throw DomainError("ADR/AVC diagnostics need 12 paired monthly values");
    }
    return correlate(avc, adr);
}

}  // namespace sfair
