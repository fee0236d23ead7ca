// entroscope: entity entropy analytics over document corpora.
//
// Subcommands: analyze, overlap, temporal, simulate, fit. Exit codes:
// 0 success, 1 I/O or validation error, 2 empty or no eligible data.

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace entroscope::cli;

void add_corpus_options(CLI::App* cmd, CorpusOptions& options) {
    cmd->add_option("--docs", options.docs_path, "documents JSONL file")->required();
    cmd->add_option("--entities", options.entities_path, "entities JSONL file")->required();
    cmd->add_option("--facts", options.facts_path, "facts JSONL file")->required();
    cmd->add_option("--min-facts", options.min_facts,
                    "admit entities with at least this many facts");
    cmd->add_option("--min-docs", options.min_docs,
                    "admit entities spanning at least this many documents");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entity entropy analytics over document corpora"};
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    auto* cmd_analyze = app.add_subcommand("analyze", "cross-sectional entropy analytics");
    add_corpus_options(cmd_analyze, analyze.corpus);
    cmd_analyze->add_option("--out", analyze.out_dir, "output directory")->required();
    cmd_analyze->add_option("--threshold", analyze.threshold, "coverage threshold (0,1]");
    cmd_analyze->add_option("--bins", analyze.bins, "histogram bin count");
    cmd_analyze->add_option("--bandwidth", analyze.bandwidth,
                            "KDE bandwidth override (default: Silverman)");

    OverlapOptions overlap;
    auto* cmd_overlap = app.add_subcommand("overlap", "shared-document entity graph");
    add_corpus_options(cmd_overlap, overlap.corpus);
    cmd_overlap->add_option("--out", overlap.out_dir, "output directory")->required();
    cmd_overlap->add_option("--top-k", overlap.top_k,
                            "also report the induced subgraph on the top k nodes");
    cmd_overlap->add_option("--min-weight", overlap.min_weight,
                            "drop edges sharing fewer documents than this");

    TemporalOptions temporal;
    auto* cmd_temporal = app.add_subcommand("temporal", "entropy-over-time series");
    add_corpus_options(cmd_temporal, temporal.corpus);
    cmd_temporal->add_option("--out", temporal.out_dir, "output directory")->required();
    cmd_temporal->add_option("--horizon", temporal.horizon,
                             "series length in days (-1: to the corpus end)");
    cmd_temporal->add_option("--burst-threshold", temporal.burst_threshold,
                             "flag day-over-day entropy jumps of at least this size");
    cmd_temporal->add_option("--early", temporal.early_day, "early snapshot day");
    cmd_temporal->add_option("--final", temporal.final_day, "final snapshot day");

    SimulateOptions simulate;
    auto* cmd_simulate = app.add_subcommand("simulate", "generative model trajectories");
    cmd_simulate->add_option("--params", simulate.params_path,
                             "JSON parameter file for a single entity");
    cmd_simulate->add_option("--population", simulate.population_path,
                             "JSON population spec (distributions per parameter)");
    cmd_simulate->add_option("--out", simulate.out_dir, "output directory")->required();
    cmd_simulate->add_option("--docs", simulate.corpus.docs_path,
                             "documents JSONL (corpus schedule source)");
    cmd_simulate->add_option("--entities", simulate.corpus.entities_path,
                             "entities JSONL (corpus schedule source)");
    cmd_simulate->add_option("--facts", simulate.corpus.facts_path,
                             "facts JSONL (corpus schedule source)");
    cmd_simulate->add_option("--schedule-file", simulate.schedule_file,
                             "JSON array of daily document counts");
    cmd_simulate->add_option("--schedule-lognormal", [&simulate](CLI::results_t results) {
        simulate.schedule_mu = std::stod(results.at(0));
        simulate.schedule_sigma = std::stod(results.at(1));
        return true;
    }, "draw daily counts from round(LogNormal(mu, sigma))")->expected(2);
    cmd_simulate->add_option("--schedule-seed", simulate.schedule_seed,
                             "seed for the lognormal schedule");
    cmd_simulate->add_option("--days", simulate.days, "simulation horizon in days");
    cmd_simulate->add_option("--mode", simulate.mode, "expectation | stochastic");
    cmd_simulate->add_option("--window", simulate.window,
                             "feedback window: day-local | cumulative");
    cmd_simulate->add_option("--seed", simulate.seed, "simulation seed");

    FitOptions fit;
    auto* cmd_fit = app.add_subcommand("fit", "per-entity parameter fitting");
    add_corpus_options(cmd_fit, fit.corpus);
    cmd_fit->add_option("--out", fit.out_dir, "output directory")->required();
    cmd_fit->add_option("--train-days", fit.train_days,
                        "training windows in days (default 30 60 90)");
    cmd_fit->add_option("--eval-days", fit.eval_days, "evaluation window in days");
    cmd_fit->add_option("--restarts", fit.restarts, "multi-start restarts per fit");
    cmd_fit->add_option("--max-iterations", fit.max_iterations, "optimizer iteration cap");
    cmd_fit->add_option("--tolerance", fit.tolerance, "optimizer objective tolerance");
    cmd_fit->add_option("--seed", fit.seed, "restart jitter seed");
    cmd_fit->add_option("--window", fit.window, "feedback window: day-local | cumulative");
    cmd_fit->add_option("--summary-metric", fit.summary_metric,
                        "summarize test or train RMSE");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
        app.exit(e);
        return 1;
    }

    try {
        if (*cmd_analyze) run_analyze(analyze);
        if (*cmd_overlap) run_overlap(overlap);
        if (*cmd_temporal) run_temporal(temporal);
        if (*cmd_simulate) run_simulate(simulate);
        if (*cmd_fit) run_fit(fit);
    } catch (const EmptyDataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
