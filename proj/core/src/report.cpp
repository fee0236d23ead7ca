#include "entroscope/report.hpp"

#include <algorithm>
#include <cmath>

#include "entroscope/stats.hpp"

namespace entroscope {

std::vector<HistogramBin> histogram(std::span<const double> values,
                                    std::size_t bins, double lo, double hi) {
    if (bins == 0) throw Error("histogram needs at least one bin");
    if (!(hi > lo)) throw Error("histogram range must satisfy hi > lo");

    std::vector<HistogramBin> out(bins);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out[b].lo = lo + width * static_cast<double>(b);
        out[b].hi = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
    }
    for (double v : values) {
        auto idx = static_cast<std::ptrdiff_t>(std::floor((v - lo) / width));
        idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(bins) - 1);
        out[static_cast<std::size_t>(idx)].count += 1;
    }
    return out;
}

double silverman_bandwidth(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double sd = stats::stddev_sample(values);
    const double iqr =
        stats::quantile_sorted(sorted, 0.75) - stats::quantile_sorted(sorted, 0.25);
    double spread = sd;
    if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
    if (!(spread > 0.0)) return 0.0;
    return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

std::optional<KdeCurve> kde_curve(std::span<const double> values,
                                  std::optional<double> bandwidth,
                                  std::size_t grid_points) {
    if (values.size() < 2 || grid_points < 2) return std::nullopt;
    const double h = bandwidth.value_or(silverman_bandwidth(values));
    if (!(h > 0.0)) return std::nullopt;

    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *min_it - 3.0 * h;
    const double hi = *max_it + 3.0 * h;
    const double step = (hi - lo) / static_cast<double>(grid_points - 1);
    const double norm =
        1.0 / (static_cast<double>(values.size()) * h * std::sqrt(2.0 * M_PI));

    KdeCurve curve;
    curve.bandwidth = h;
    curve.points.reserve(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = lo + step * static_cast<double>(i);
        double density = 0.0;
        for (double v : values) {
            const double u = (x - v) / h;
            density += std::exp(-0.5 * u * u);
        }
        curve.points.push_back({x, density * norm});
    }
    return curve;
}

double curve_area(const KdeCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += 0.5 * (a.density + b.density) * (b.x - a.x);
    }
    return area;
}

AnalysisReport build_analysis_report(const CorpusIndex& index,
                                     double coverage_threshold,
                                     std::size_t histogram_bins,
                                     std::optional<double> kde_bandwidth) {
    AnalysisReport report;
    report.profiles = entropy_profiles(index);
    report.categories = category_stats(index);
    report.size_entropy = size_entropy_pairs(index);
    report.coverage = coverage_rank_table(index, coverage_threshold);
    report.coverage_threshold = coverage_threshold;

    std::vector<double> entropies;
    entropies.reserve(report.profiles.size());
    for (const auto& profile : report.profiles) entropies.push_back(profile.entropy_bits);

    const double hi = index.doc_count() >= 2 ? max_corpus_entropy(index.doc_count()) : 1.0;
    report.entropy_histogram = histogram(entropies, histogram_bins, 0.0, hi);
    report.entropy_density = kde_curve(entropies, kde_bandwidth);
    return report;
}

}  // namespace entroscope
