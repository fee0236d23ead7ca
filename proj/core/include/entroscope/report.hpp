#pragma once
// Figure-ready report data: entropy histogram, Gaussian-kernel density
// curve, and the bundled cross-sectional analysis tables the CLI writes.
// The library emits data only; rendering is left to external tools.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "entroscope/corpus.hpp"
#include "entroscope/entropy.hpp"

namespace entroscope {

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

// Uniform bins over [lo, hi]; values outside are clamped into the edge
// bins, so counts always sum to values.size().
std::vector<HistogramBin> histogram(std::span<const double> values,
                                    std::size_t bins, double lo, double hi);

struct KdePoint {
    double x = 0.0;
    double density = 0.0;
};

struct KdeCurve {
    double bandwidth = 0.0;
    std::vector<KdePoint> points;  // uniform grid over [min-3h, max+3h]
};

// Silverman's rule of thumb: 0.9 * min(sample std, IQR/1.34) * n^(-1/5).
// Returns 0 for degenerate input (n < 2 or zero spread).
double silverman_bandwidth(std::span<const double> values);

// Gaussian-kernel density estimate. Bandwidth defaults to Silverman's rule;
// nullopt when n < 2 or the effective bandwidth is degenerate.
std::optional<KdeCurve> kde_curve(std::span<const double> values,
                                  std::optional<double> bandwidth = std::nullopt,
                                  std::size_t grid_points = 256);

// Trapezoid-rule area under the curve; close to 1 for any valid KDE.
double curve_area(const KdeCurve& curve);

// Everything cmd-analyze writes, computed in one pass so invariants can be
// tested without touching the filesystem.
struct AnalysisReport {
    std::vector<EntropyProfile> profiles;
    std::vector<CategoryStats> categories;
    SizeEntropyResult size_entropy;
    std::vector<std::pair<std::string, std::size_t>> coverage;  // rank order
    double coverage_threshold = 0.95;
    std::vector<HistogramBin> entropy_histogram;
    std::optional<KdeCurve> entropy_density;
};

AnalysisReport build_analysis_report(const CorpusIndex& index,
                                     double coverage_threshold = 0.95,
                                     std::size_t histogram_bins = 50,
                                     std::optional<double> kde_bandwidth = std::nullopt);

}  // namespace entroscope
