#pragma once
// Descriptive statistics shared by the analytics modules.
//
// Conventions are fixed here once so every report uses the same ones:
//   - median: lower-middle element for even-sized input
//   - standard deviation: population (divide by n) unless noted
//   - correlations return nullopt when undefined (fewer than two points
//     or zero variance) instead of raising

#include <optional>
#include <span>
#include <vector>

namespace entroscope::stats {

double mean(std::span<const double> xs);

// Lower-middle median: sorted[(n-1)/2].
double median_lower(std::span<const double> xs);

double stddev_population(std::span<const double> xs);
double stddev_sample(std::span<const double> xs);

// Adjusted Fisher-Pearson sample skewness (G1). nullopt for n < 3 or zero
// variance.
std::optional<double> sample_skewness(std::span<const double> xs);

// 1-based ranks; ties get the mean of the positions they occupy.
std::vector<double> average_ranks(std::span<const double> xs);

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

// Spearman rank correlation: Pearson over average ranks.
std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys);

struct OlsLine {
    double slope;
    double intercept;
};

// Ordinary least squares y = slope * x + intercept. nullopt when fewer than
// two points or the x values have zero variance.
std::optional<OlsLine> ols_fit(std::span<const double> xs, std::span<const double> ys);

// Linear-interpolation quantile (the "type 7" convention) over sorted input.
double quantile_sorted(std::span<const double> sorted_xs, double q);

}  // namespace entroscope::stats
