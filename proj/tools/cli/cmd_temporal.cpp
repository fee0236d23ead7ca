#include "commands.hpp"

#include <iostream>

#include "entroscope/csv.hpp"
#include "entroscope/temporal.hpp"
#include "util.hpp"

namespace entroscope::cli {

void run_temporal(const TemporalOptions& options) {
    const CorpusIndex index = load_filtered_corpus(options.corpus);
    const auto out = ensure_out_dir(options.out_dir);

    std::optional<DayIndex> corpus_last_day;
    for (const auto& doc : index.documents())
        if (doc.created_day && (!corpus_last_day || *doc.created_day > *corpus_last_day))
            corpus_last_day = *doc.created_day;

    std::vector<EntropySeries> series_list;
    for (const auto& table : index.fact_tables()) {
        // per-entity horizon: either the flag or the span to the corpus end
        std::optional<DayIndex> first;
        bool dated = true;
        for (const auto& [doc_id, count] : table.counts) {
            const auto day = index.document_day(doc_id);
            if (!day) {
                dated = false;
                break;
            }
            if (!first || *day < *first) first = *day;
        }
        if (!dated || !first) {
            std::cerr << "warning: temporal analysis unavailable for \"" << table.entity_id
                      << "\" (undated document)\n";
            continue;
        }
        std::size_t horizon;
        if (options.horizon >= 0) {
            horizon = static_cast<std::size_t>(options.horizon);
        } else {
            horizon = corpus_last_day && *corpus_last_day > *first
                          ? static_cast<std::size_t>(*corpus_last_day - *first)
                          : 0;
        }
        series_list.push_back(entropy_series(index, table.entity_id, horizon));
    }
    if (series_list.empty()) throw EmptyDataError("no entities with dated documents");

    {
        CsvWriter csv((out / "series.csv").string());
        csv.row({"entity_id", "day_offset", "entropy_bits"});
        for (const auto& series : series_list)
            for (std::size_t t = 0; t < series.values.size(); ++t)
                csv.row({series.entity_id, std::to_string(t), fmt_double(series.values[t])});
    }

    std::vector<EarlyFinalPoint> points;
    for (const auto& series : series_list)
        if (const auto point = early_vs_final(series, options.early_day, options.final_day))
            points.push_back(*point);
    {
        CsvWriter csv((out / "early_final.csv").string());
        csv.row({"entity_id", "early_entropy", "final_entropy", "class"});
        for (const auto& point : points)
            csv.row({point.entity_id, fmt_double(point.early), fmt_double(point.final_),
                     point.cls == GrowthClass::growing ? "growing" : "stable"});
    }
    {
        CsvWriter csv((out / "regression.csv").string());
        csv.row({"subset", "slope", "intercept", "n_points"});
        const auto count_subset = [&](RegressionSubset subset) {
            std::size_t n = 0;
            for (const auto& p : points)
                if (subset == RegressionSubset::all || p.cls == GrowthClass::growing) ++n;
            return n;
        };
        if (const auto line = early_final_regression(points, RegressionSubset::all))
            csv.row({"all", fmt_double(line->slope), fmt_double(line->intercept),
                     std::to_string(count_subset(RegressionSubset::all))});
        if (const auto line = early_final_regression(points, RegressionSubset::growing))
            csv.row({"growing", fmt_double(line->slope), fmt_double(line->intercept),
                     std::to_string(count_subset(RegressionSubset::growing))});
    }

    if (options.burst_threshold) {
        CsvWriter csv((out / "bursts.csv").string());
        csv.row({"entity_id", "day_offset", "delta"});
        for (const auto& series : series_list) {
            if (series.values.size() < 2) continue;
            for (std::size_t t : detect_bursts(series, *options.burst_threshold))
                csv.row({series.entity_id, std::to_string(t),
                         fmt_double(series.values[t] - series.values[t - 1])});
        }
    }
}

}  // namespace entroscope::cli
