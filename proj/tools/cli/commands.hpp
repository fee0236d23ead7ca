#pragma once
// Subcommand entry points. Each run_* loads inputs, computes, and writes
// CSV/JSON files into the output directory. They throw entroscope::Error
// for I/O and validation problems and EmptyDataError when there is nothing
// eligible to analyze; main maps those to exit codes 1 and 2.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entroscope/corpus.hpp"

namespace entroscope::cli {

class EmptyDataError : public Error {
public:
    using Error::Error;
};

struct CorpusOptions {
    std::string docs_path;
    std::string entities_path;
    std::string facts_path;
    std::int64_t min_facts = 1;
    std::int64_t min_docs = 1;
};

struct AnalyzeOptions {
    CorpusOptions corpus;
    std::string out_dir;
    double threshold = 0.95;
    std::size_t bins = 50;
    std::optional<double> bandwidth;
};

struct OverlapOptions {
    CorpusOptions corpus;
    std::string out_dir;
    std::optional<std::size_t> top_k;
    std::int64_t min_weight = 1;
};

struct TemporalOptions {
    CorpusOptions corpus;
    std::string out_dir;
    std::int64_t horizon = -1;  // -1: run every entity to the corpus end
    std::optional<double> burst_threshold;
    std::size_t early_day = 10;
    std::size_t final_day = 90;
};

struct SimulateOptions {
    std::string params_path;      // single-entity run
    std::string population_path;  // population run (exclusive with params)
    std::string out_dir;
    // schedule source: exactly one of the three
    CorpusOptions corpus;            // used when schedule == "corpus"
    std::string schedule_file;       // JSON array of daily counts
    std::optional<double> schedule_mu;     // lognormal schedule
    std::optional<double> schedule_sigma;
    std::int64_t days = -1;          // horizon; required unless a file fixes it
    std::uint64_t schedule_seed = 0;
    std::string mode = "expectation";
    std::string window = "day-local";
    std::uint64_t seed = 0;
};

struct FitOptions {
    CorpusOptions corpus;
    std::string out_dir;
    std::vector<int> train_days = {30, 60, 90};
    int eval_days = 90;
    int restarts = 8;
    int max_iterations = 200;
    double tolerance = 1e-8;
    std::uint64_t seed = 0;
    std::string window = "day-local";
    std::string summary_metric = "test";
};

void run_analyze(const AnalyzeOptions& options);
void run_overlap(const OverlapOptions& options);
void run_temporal(const TemporalOptions& options);
void run_simulate(const SimulateOptions& options);
void run_fit(const FitOptions& options);

}  // namespace entroscope::cli
