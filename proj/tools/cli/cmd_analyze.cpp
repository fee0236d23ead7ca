#include "commands.hpp"

#include "entroscope/csv.hpp"
#include "entroscope/report.hpp"
#include "entroscope/stats.hpp"
#include "util.hpp"

namespace entroscope::cli {

void run_analyze(const AnalyzeOptions& options) {
    const CorpusIndex index = load_filtered_corpus(options.corpus);
    const auto out = ensure_out_dir(options.out_dir);
    const AnalysisReport report =
        build_analysis_report(index, options.threshold, options.bins, options.bandwidth);

    {
        CsvWriter csv((out / "profiles.csv").string());
        csv.row({"entity_id", "category", "total_facts", "doc_count", "entropy_bits"});
        for (const auto& p : report.profiles) {
            const auto* entity = index.find_entity(p.entity_id);
            csv.row({p.entity_id, entity ? entity->category : "UNKNOWN",
                     std::to_string(p.total_facts), std::to_string(p.doc_count),
                     fmt_double(p.entropy_bits)});
        }
    }
    {
        CsvWriter csv((out / "category_stats.csv").string());
        csv.row({"category", "mean_entropy", "median_entropy", "std_dev", "count"});
        for (const auto& row : report.categories)
            csv.row({row.category, fmt_double(row.mean_entropy),
                     fmt_double(row.median_entropy), fmt_double(row.std_dev),
                     std::to_string(row.count)});
    }
    {
        CsvWriter csv((out / "size_entropy.csv").string());
        csv.row({"entity_id", "total_facts", "entropy_bits"});
        for (const auto& point : report.size_entropy.points)
            csv.row({point.entity_id, std::to_string(point.total_facts),
                     fmt_double(point.entropy_bits)});
    }
    {
        CsvWriter csv((out / "coverage.csv").string());
        csv.row({"entity_id", "docs_for_threshold"});
        for (const auto& [entity_id, count] : report.coverage)
            csv.row({entity_id, std::to_string(count)});
    }
    {
        CsvWriter csv((out / "histogram.csv").string());
        csv.row({"bin_lo", "bin_hi", "count"});
        for (const auto& bin : report.entropy_histogram)
            csv.row({fmt_double(bin.lo), fmt_double(bin.hi), std::to_string(bin.count)});
    }
    if (report.entropy_density) {
        CsvWriter csv((out / "kde.csv").string());
        csv.row({"x", "density"});
        for (const auto& point : report.entropy_density->points)
            csv.row({fmt_double(point.x), fmt_double(point.density)});
    }

    std::vector<double> entropies;
    for (const auto& p : report.profiles) entropies.push_back(p.entropy_bits);
    nlohmann::json summary{
        {"n_documents", index.doc_count()},
        {"n_entities_admitted", report.profiles.size()},
        {"corpus_max_entropy_bits",
         report.profiles.empty() ? 0.0 : report.profiles.front().corpus_max_bits},
        {"coverage_threshold", report.coverage_threshold},
        {"mean_entropy", stats::mean(entropies)},
        {"median_entropy", stats::median_lower(entropies)},
        {"spearman_size_entropy", nullptr},
        {"pearson_size_entropy", nullptr},
        {"kde_bandwidth", nullptr},
    };
    if (report.size_entropy.spearman)
        summary["spearman_size_entropy"] = *report.size_entropy.spearman;
    if (report.size_entropy.pearson)
        summary["pearson_size_entropy"] = *report.size_entropy.pearson;
    if (report.entropy_density) summary["kde_bandwidth"] = report.entropy_density->bandwidth;
    write_json_file(out / "summary.json", summary);
}

}  // namespace entroscope::cli
