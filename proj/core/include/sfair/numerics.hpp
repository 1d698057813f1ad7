#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sfair {

inline constexpr double kSignificanceLevel = 0.05;

// Min-max range of a sample. normalize() maps min to 0 and max to 1; a
// degenerate range (max == min) maps everything to 0.
struct MinMaxRange {
    double min = 0.0;
    double max = 0.0;

    static MinMaxRange of(std::span<const double> values);
    double normalize(double value) const;
};

double min_max_normalize(std::span<const double> values, double value);

// Lorenz curve over the ascending-sorted input: x_i = i/n and y_i the
// cumulative share of the total through element i.
struct LorenzCurve {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const noexcept { return x.size(); }
};

LorenzCurve lorenz(std::span<const double> values);

// G = (2/n) * sum(x_i - y_i). Ranges over [0, (n-1)/n].
double gini(std::span<const double> values);

// Sample Pearson correlation. Requires equal lengths >= 3 and nonzero
// variance in both series.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct CorrelationResult {
    double r = 0.0;
    std::size_t n = 0;
    double t_stat = 0.0;
    double p_value = 1.0;
    bool significant = false;
};

// Two-sided t-test of H0: r == 0 with n - 2 degrees of freedom.
// |r| == 1 short-circuits to p = 0.
CorrelationResult correlation_significance(double r, std::size_t n);

CorrelationResult correlate(std::span<const double> xs, std::span<const double> ys);

// Student-t cumulative distribution, evaluated through the regularized
// incomplete beta function.
double student_t_cdf(double t, double degrees_of_freedom);

}  // namespace sfair
