#include "sfair/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "sfair/error.hpp"

namespace sfair {

MinMaxRange MinMaxRange::of(std::span<const double> values) {
    if (values.empty()) throw DomainError("min-max normalization of an empty set");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!std::isfinite(*lo) || !std::isfinite(*hi)) {
        throw DomainError("min-max normalization of non-finite values");
    }
    return MinMaxRange{*lo, *hi};
}

double MinMaxRange::normalize(double value) const {
    if (!(value >= min && value <= max)) {
        throw DomainError("value " + std::to_string(value) + " outside normalization range [" +
                          std::to_string(min) + ", " + std::to_string(max) + "]");
    }
    if (max == min) return 0.0;
    return (value - min) / (max - min);
}

double min_max_normalize(std::span<const double> values, double value) {
    return MinMaxRange::of(values).normalize(value);
}

LorenzCurve lorenz(std::span<const double> values) {
    if (values.empty()) throw DomainError("Lorenz curve of an empty set");
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError("Lorenz curve requires finite nonnegative values");
        }
    }
    std::sort(sorted.begin(), sorted.end());
    const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    if (!(total > 0.0)) throw DomainError("Lorenz curve requires a positive total");

    const auto n = sorted.size();
    LorenzCurve curve;
    curve.x.resize(n);
    curve.y.resize(n);
    double running = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        running += sorted[i];
        curve.x[i] = static_cast<double>(i + 1) / static_cast<double>(n);
        curve.y[i] = running / total;
    }
    // Pin the endpoint against accumulated rounding.
    curve.y[n - 1] = 1.0;
    return curve;
}

double gini(std::span<const double> values) {
    const LorenzCurve curve = lorenz(values);
    double gap = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) gap += curve.x[i] - curve.y[i];
    const double g = 2.0 / static_cast<double>(curve.size()) * gap;
    return std::max(g, 0.0);
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw DomainError("pearson: series lengths differ (" + std::to_string(xs.size()) + " vs " +
                          std::to_string(ys.size()) + ")");
    }
    if (xs.size() < 3) throw DomainError("pearson: need at least 3 paired values");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw DomainError("pearson: zero variance series");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double student_t_cdf(double t, double degrees_of_freedom) {
    if (!(degrees_of_freedom > 0.0)) throw DomainError("t distribution needs df > 0");
    if (std::isnan(t)) throw DomainError("t distribution evaluated at NaN");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    // P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    const double x = degrees_of_freedom / (degrees_of_freedom + t * t);
    const double tail = boost::math::ibeta(degrees_of_freedom / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - tail / 2.0 : tail / 2.0;
}

CorrelationResult correlation_significance(double r, std::size_t n) {
    if (n < 3) throw DomainError("correlation significance requires n >= 3");
    if (!std::isfinite(r) || std::abs(r) > 1.0) {
        throw DomainError("correlation coefficient must lie in [-1, 1]");
    }
    CorrelationResult result;
    result.r = r;
    result.n = n;
    if (std::abs(r) == 1.0) {
        result.t_stat = std::copysign(std::numeric_limits<double>::infinity(), r);
        result.p_value = 0.0;
        result.significant = true;
        return result;
    }
    const double df = static_cast<double>(n - 2);
    result.t_stat = r * std::sqrt(df / (1.0 - r * r));
    const double x = df / (df + result.t_stat * result.t_stat);
    result.p_value = std::clamp(boost::math::ibeta(df / 2.0, 0.5, x), 0.0, 1.0);
    result.significant = result.p_value < kSignificanceLevel;
    return result;
}

CorrelationResult correlate(std::span<const double> xs, std::span<const double> ys) {
    return correlation_significance(pearson(xs, ys), xs.size());
}

}  // namespace sfair
