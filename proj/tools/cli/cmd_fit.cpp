#include "commands.hpp"

#include <algorithm>
#include <iostream>

#include "entroscope/csv.hpp"
#include "entroscope/fitting.hpp"
#include "entroscope/parallel.hpp"
#include "util.hpp"

namespace entroscope::cli {

void run_fit(const FitOptions& options) {
    if (options.train_days.empty()) throw Error("--train-days needs at least one window");
    const CorpusIndex index = load_filtered_corpus(options.corpus);
    const auto out = ensure_out_dir(options.out_dir);
    const FeedbackWindow window = parse_window(options.window);

    double mu_facts = 0.0, sigma_facts = 1.0;
    if (const auto volume = fit_global_fact_params(index); volume && !volume->degenerate) {
        mu_facts = volume->mu;
        sigma_facts = volume->sigma;
    } else {
        std::cerr << "warning: lognormal fact-volume fit unavailable or degenerate; "
                     "using mu=0, sigma=1\n";
    }

    std::optional<DayIndex> corpus_last_day;
    for (const auto& doc : index.documents())
        if (doc.created_day && (!corpus_last_day || *doc.created_day > *corpus_last_day))
            corpus_last_day = *doc.created_day;
    if (!corpus_last_day) throw EmptyDataError("corpus has no dated documents");

    // Per-entity series to the corpus end plus the aligned corpus-wide
    // document schedule; undated entities are skipped with a warning.
    struct EntityData {
        EntropySeries series;
        DocSchedule schedule;
        double final_entropy = 0.0;
    };
    std::vector<EntityData> eligible;
    for (const auto& table : index.fact_tables()) {
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
            std::cerr << "warning: skipping \"" << table.entity_id
                      << "\" (undated document)\n";
            continue;
        }
        EntityData data;
        const std::size_t horizon =
            *corpus_last_day > *first ? static_cast<std::size_t>(*corpus_last_day - *first)
                                      : 0;
        data.series = entropy_series(index, table.entity_id, horizon);
        data.schedule = DocSchedule::from_corpus(index, *first, horizon + 1);
        data.final_entropy = data.series.values.back();
        eligible.push_back(std::move(data));
    }

    struct Job {
        const EntityData* data;
        int train_days;
    };
    std::vector<Job> jobs;
    for (const auto& data : eligible)
        for (int train : options.train_days) jobs.push_back({&data, train});

    std::vector<std::optional<FitResult>> outcomes(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        FitConfig config;
        config.train_days = jobs[i].train_days;
        config.eval_days = options.eval_days;
        config.restarts = options.restarts;
        config.max_iterations = options.max_iterations;
        config.tolerance = options.tolerance;
        config.seed = options.seed * 1000003ULL + i;
        config.window = window;
        config.mu_facts = mu_facts;
        config.sigma_facts = sigma_facts;
        outcomes[i] = fit_entity(jobs[i].data->series, jobs[i].data->schedule, config);
    });

    std::vector<FitResult> results;
    std::vector<double> final_entropies;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (outcomes[i]) {
            results.push_back(*outcomes[i]);
            final_entropies.push_back(jobs[i].data->final_entropy);
        }
    }
    if (results.empty())
        throw EmptyDataError("no entities eligible for fitting (need non-zero entropy "
                             "and enough history)");

    {
        CsvWriter csv((out / "fit_results.csv").string());
        csv.row({"entity_id", "train_days", "alpha_e", "delta_e", "alpha_local",
                 "alpha_global", "alpha_docs", "train_rmse", "test_rmse", "converged"});
        for (const auto& r : results)
            csv.row({r.entity_id, std::to_string(r.train_days), fmt_double(r.params.alpha_e),
                     fmt_double(r.params.delta_e), fmt_double(r.params.alpha_local),
                     fmt_double(r.params.alpha_global), fmt_double(r.params.alpha_docs),
                     fmt_double(r.train_rmse), fmt_double(r.test_rmse),
                     r.converged ? "true" : "false"});
    }
    {
        const FitMetric metric =
            options.summary_metric == "train" ? FitMetric::train : FitMetric::test;
        CsvWriter csv((out / "fit_summary.csv").string());
        csv.row({"train_days", "mean_rmse", "median_rmse", "std_rmse", "valid_samples"});
        for (const auto& row : fit_summary(results, metric))
            csv.row({std::to_string(row.train_days), fmt_double(row.mean_rmse),
                     fmt_double(row.median_rmse), fmt_double(row.std_rmse),
                     std::to_string(row.valid_samples)});
    }
    {
        CsvWriter csv((out / "fit_scatter.csv").string());
        csv.row({"entity_id", "train_days", "final_entropy", "train_rmse", "test_rmse"});
        for (std::size_t i = 0; i < results.size(); ++i)
            csv.row({results[i].entity_id, std::to_string(results[i].train_days),
                     fmt_double(final_entropies[i]), fmt_double(results[i].train_rmse),
                     fmt_double(results[i].test_rmse)});
    }

    nlohmann::json summary{
        {"mu_facts", mu_facts},
        {"sigma_facts", sigma_facts},
        {"entities_considered", eligible.size()},
        {"fits_produced", results.size()},
    };
    write_json_file(out / "fit_meta.json", summary);
}

}  // namespace entroscope::cli
