#include "entroscope/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entroscope {

EntropySeries entropy_series(const CorpusIndex& index,
                             const std::string& entity_id,
                             std::size_t horizon_days) {
    const auto* table = index.find_table(entity_id);
    if (!table) throw Error("entity has no facts: \"" + entity_id + "\"");

    // (day, count) per document; every referenced document must be dated.
    std::vector<std::pair<DayIndex, std::int64_t>> dated;
    dated.reserve(table->counts.size());
    for (const auto& [doc_id, count] : table->counts) {
        const auto day = index.document_day(doc_id);
        if (!day)
            throw Error("temporal analysis unavailable for \"" + entity_id +
                        "\": document \"" + doc_id + "\" has no valid date");
        dated.emplace_back(*day, count);
    }
    std::sort(dated.begin(), dated.end());

    EntropySeries series;
    series.entity_id = entity_id;
    series.first_mention = dated.front().first;
    series.values.reserve(horizon_days + 1);

    // Incremental entropy over cumulative counts: H = log2(S) - Q/S with
    // S = sum of counts and Q = sum of count*log2(count). Documents are
    // append-only in date order, so both sums only ever grow.
    double sum = 0.0, sum_clog2c = 0.0;
    std::size_t docs_seen = 0, next = 0;
    for (std::size_t offset = 0; offset <= horizon_days; ++offset) {
        const DayIndex cutoff = series.first_mention + static_cast<DayIndex>(offset);
        while (next < dated.size() && dated[next].first <= cutoff) {
            const double c = static_cast<double>(dated[next].second);
            sum += c;
            sum_clog2c += c * std::log2(c);
            ++docs_seen;
            ++next;
        }
        const double h = docs_seen <= 1 ? 0.0 : std::log2(sum) - sum_clog2c / sum;
        series.values.push_back(std::max(h, 0.0));
    }
    return series;
}

std::vector<double> delta_series(const EntropySeries& series) {
    if (series.values.size() < 2)
        throw Error("delta_series requires a series of length >= 2");
    std::vector<double> deltas;
    deltas.reserve(series.values.size() - 1);
    for (std::size_t t = 1; t < series.values.size(); ++t)
        deltas.push_back(series.values[t] - series.values[t - 1]);
    return deltas;
}

std::vector<std::size_t> detect_bursts(const EntropySeries& series, double threshold) {
    if (!(threshold > 0.0)) throw Error("burst threshold must be > 0");
    std::vector<std::size_t> offsets;
    for (std::size_t t = 1; t < series.values.size(); ++t)
        if (std::abs(series.values[t] - series.values[t - 1]) >= threshold)
            offsets.push_back(t);
    return offsets;
}

std::optional<EarlyFinalPoint> early_vs_final(const EntropySeries& series,
                                              std::size_t early_day,
                                              std::size_t final_day) {
    if (series.values.size() <= final_day || early_day > final_day) return std::nullopt;
    EarlyFinalPoint point;
    point.entity_id = series.entity_id;
    point.early = series.values[early_day];
    point.final_ = series.values[final_day];
    point.cls = series.values[early_day] > series.values[0] ? GrowthClass::growing
                                                            : GrowthClass::stable;
    return point;
}

std::optional<stats::OlsLine> early_final_regression(
    std::span<const EarlyFinalPoint> points, RegressionSubset subset) {
    std::vector<double> xs, ys;
    for (const auto& point : points) {
        if (subset == RegressionSubset::growing && point.cls != GrowthClass::growing)
            continue;
        xs.push_back(point.early);
        ys.push_back(point.final_);
    }
    return stats::ols_fit(xs, ys);
}

}  // namespace entroscope
