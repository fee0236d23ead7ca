#pragma once
// Day-indexed cumulative entropy series and the analyses built on them:
// daily deltas, burst flags, early-vs-final growth pairs and their
// regression lines.
//
// Day offsets count from an entity's first mention. Days without new facts
// carry the previous entropy forward, so every series is dense.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entroscope/corpus.hpp"
#include "entroscope/stats.hpp"

namespace entroscope {

struct EntropySeries {
    std::string entity_id;
    DayIndex first_mention = 0;
    // values[t] = entropy of the cumulative fact distribution over all
    // documents dated <= first_mention + t. Length is horizon + 1.
    std::vector<double> values;
};

// Throws Error when the entity is unknown, has no facts, or references an
// undated document ("temporal analysis unavailable").
EntropySeries entropy_series(const CorpusIndex& index,
                             const std::string& entity_id,
                             std::size_t horizon_days);

// First differences. Negative entries are legitimate: entropy drops when
// one document absorbs most of the new facts. Requires length >= 2.
std::vector<double> delta_series(const EntropySeries& series);

// Day offsets t >= 1 where |values[t] - values[t-1]| >= threshold.
std::vector<std::size_t> detect_bursts(const EntropySeries& series, double threshold);

enum class GrowthClass { stable, growing };

struct EarlyFinalPoint {
    std::string entity_id;
    double early = 0.0;
    double final_ = 0.0;
    GrowthClass cls = GrowthClass::stable;
};

// growing iff values[early_day] > values[0] (strict increase over the
// entity's debut entropy). nullopt when the series does not reach
// final_day.
std::optional<EarlyFinalPoint> early_vs_final(const EntropySeries& series,
                                              std::size_t early_day = 10,
                                              std::size_t final_day = 90);

enum class RegressionSubset { all, growing };

// OLS of final on early entropy over the selected subset of points.
std::optional<stats::OlsLine> early_final_regression(
    std::span<const EarlyFinalPoint> points, RegressionSubset subset);

}  // namespace entroscope
