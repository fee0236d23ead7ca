#include "entroscope/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace entroscope::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double median_lower(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted[(sorted.size() - 1) / 2];
}

namespace {

double central_moment(std::span<const double> xs, double mu, int k) {
    double acc = 0.0;
    for (double x : xs) acc += std::pow(x - mu, k);
    return acc / static_cast<double>(xs.size());
}

}  // namespace

double stddev_population(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::sqrt(central_moment(xs, mean(xs), 2));
}

double stddev_sample(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    const double mu = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(n - 1));
}

std::optional<double> sample_skewness(std::span<const double> xs) {
    const double n = static_cast<double>(xs.size());
    if (xs.size() < 3) return std::nullopt;
    const double mu = mean(xs);
    const double m2 = central_moment(xs, mu, 2);
    if (m2 <= 0.0) return std::nullopt;
    const double g1 = central_moment(xs, mu, 3) / std::pow(m2, 1.5);
    return g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
}

std::vector<double> average_ranks(std::span<const double> xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        // positions i..j (0-based) share the average 1-based rank
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) return std::nullopt;
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    return pearson(rx, ry);
}

std::optional<OlsLine> ols_fit(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) return std::nullopt;
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        sxx += dx * dx;
        sxy += dx * (ys[i] - my);
    }
    if (sxx <= 0.0) return std::nullopt;
    const double slope = sxy / sxx;
    return OlsLine{slope, my - slope * mx};
}

double quantile_sorted(std::span<const double> sorted_xs, double q) {
    if (sorted_xs.empty()) return 0.0;
    if (sorted_xs.size() == 1) return sorted_xs[0];
    const double pos = q * static_cast<double>(sorted_xs.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted_xs.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted_xs[lo] * (1.0 - frac) + sorted_xs[hi] * frac;
}

}  // namespace entroscope::stats
