#pragma once
// Per-entity parameter fitting: bounded quasi-Newton minimization of the
// RMSE between an observed entropy series and the expectation-mode
// simulation, following the train/eval windowing protocol.
//
// The objective always simulates in expectation mode — a stochastic
// objective would make finite-difference gradients meaningless. The
// lognormal fact-volume parameters are fitted once, globally, and frozen
// during per-entity fits.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entroscope/corpus.hpp"
#include "entroscope/genmodel.hpp"
#include "entroscope/temporal.hpp"

namespace entroscope {

struct ParamBounds {
    // Order: alpha_e, delta_e, alpha_local, alpha_global, alpha_docs.
    std::array<double, 5> lo{-10.0, 0.0, 0.0, 0.0, 0.01};
    std::array<double, 5> hi{10.0, 1.0, 100.0, 100.0, 1000.0};
};

struct FitConfig {
    int train_days = 90;
    int eval_days = 90;
    ParamBounds bounds;
    int max_iterations = 200;
    double tolerance = 1e-8;
    int restarts = 8;
    std::uint64_t seed = 0;  // restart jitter
    FeedbackWindow window = FeedbackWindow::day_local;
    double mu_facts = 0.0;     // frozen lognormal parameters
    double sigma_facts = 1.0;
};

struct FitResult {
    std::string entity_id;
    int train_days = 0;
    GenParams params;
    double train_rmse = 0.0;
    double test_rmse = 0.0;
    bool converged = false;
    int iterations = 0;
    int restarts_used = 0;
};

// sqrt(mean squared difference). Throws Error on length mismatch or empty
// input.
double rmse(std::span<const double> a, std::span<const double> b);

struct TrainEvalSplit {
    std::size_t anchor = 0;  // first day the series entropy exceeds 0
    std::vector<double> train;
    std::vector<double> eval;
};

// Anchors at the first non-zero entropy day and cuts contiguous train/eval
// segments. nullopt when the series never leaves 0 or is too short from the
// anchor on ("insufficient history").
std::optional<TrainEvalSplit> split_train_eval(const EntropySeries& series,
                                               int train_days, int eval_days);

// RMSE of the expectation-mode simulation against an observed train
// segment. The schedule must cover at least the segment length; extra days
// are ignored.
double objective(const GenParams& params, std::span<const double> observed_train,
                 const DocSchedule& schedule,
                 FeedbackWindow window = FeedbackWindow::day_local);

// Multi-start bounded quasi-Newton fit of one already-cut segment pair.
// The schedule is indexed like the segments (day 0 = first train day).
// Restarts stop early once the train RMSE falls below 1e-6.
FitResult fit_segment(const std::string& entity_id,
                      std::span<const double> train_segment,
                      std::span<const double> eval_segment,
                      const DocSchedule& schedule, const FitConfig& config);

// Full protocol for one entity: anchor, cut segments, align the schedule
// slice and fit. The schedule must be indexed like the series (day 0 =
// first mention). nullopt when the entity is excluded by split_train_eval.
std::optional<FitResult> fit_entity(const EntropySeries& observed,
                                    const DocSchedule& schedule,
                                    const FitConfig& config);

struct FitSummaryRow {
    int train_days = 0;
    double mean_rmse = 0.0;
    double median_rmse = 0.0;
    double std_rmse = 0.0;
    std::size_t valid_samples = 0;
};

enum class FitMetric { test, train };

// Summary rows grouped by training window, ordered by train_days.
std::vector<FitSummaryRow> fit_summary(std::span<const FitResult> results,
                                       FitMetric metric = FitMetric::test);

struct FactVolumeFit {
    double mu = 0.0;
    double sigma = 0.0;
    bool degenerate = false;  // sigma == 0: all documents hold one count
};

// Maximum-likelihood lognormal parameters over per-document total fact
// counts (mu and sigma of the log counts, population convention). nullopt
// when fewer than two documents hold facts.
std::optional<FactVolumeFit> fit_global_fact_params(const CorpusIndex& index);

}  // namespace entroscope
