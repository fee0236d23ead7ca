#include "entroscope/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "entroscope/optimizer.hpp"
#include "entroscope/stats.hpp"

namespace entroscope {

namespace {

GenParams params_from_vector(std::span<const double> x, const FitConfig& config) {
    GenParams p;
    p.alpha_e = x[0];
    p.delta_e = x[1];
    p.alpha_local = x[2];
    p.alpha_global = x[3];
    p.alpha_docs = x[4];
    p.mu_facts = config.mu_facts;
    p.sigma_facts = config.sigma_facts;
    return p;
}

}  // namespace

double rmse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error("rmse: series length mismatch");
    if (a.empty()) throw Error("rmse: empty series");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

std::optional<TrainEvalSplit> split_train_eval(const EntropySeries& series,
                                               int train_days, int eval_days) {
    if (train_days < 1 || eval_days < 0)
        throw Error("split_train_eval: train_days >= 1 and eval_days >= 0 required");

    std::size_t anchor = series.values.size();
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (series.values[i] > 0.0) {
            anchor = i;
            break;
        }
    }
    if (anchor == series.values.size()) return std::nullopt;  // never left zero

    const std::size_t needed = static_cast<std::size_t>(train_days) +
                               static_cast<std::size_t>(eval_days);
    if (series.values.size() - anchor < needed) return std::nullopt;

    TrainEvalSplit split;
    split.anchor = anchor;
    const auto begin = series.values.begin() + static_cast<std::ptrdiff_t>(anchor);
    split.train.assign(begin, begin + train_days);
    split.eval.assign(begin + train_days, begin + train_days + eval_days);
    return split;
}

double objective(const GenParams& params, std::span<const double> observed_train,
                 const DocSchedule& schedule, FeedbackWindow window) {
    if (schedule.days() < observed_train.size())
        throw Error("objective: schedule shorter than the observed segment");
    DocSchedule sliced;
    sliced.counts.assign(schedule.counts.begin(),
                         schedule.counts.begin() +
                             static_cast<std::ptrdiff_t>(observed_train.size()));
    SimOptions options;
    options.mode = SimMode::expectation;
    options.window = window;
    const SimTrajectory trajectory = simulate(params, sliced, options);
    return rmse(trajectory.entropy_bits, observed_train);
}

FitResult fit_segment(const std::string& entity_id,
                      std::span<const double> train_segment,
                      std::span<const double> eval_segment,
                      const DocSchedule& schedule, const FitConfig& config) {
    const std::size_t total_days = train_segment.size() + eval_segment.size();
    if (schedule.days() < total_days)
        throw Error("fit_segment: schedule shorter than train + eval window");

    const auto& lo = config.bounds.lo;
    const auto& hi = config.bounds.hi;

    const ObjectiveFn objective_fn = [&](std::span<const double> x) {
        return objective(params_from_vector(x, config), train_segment, schedule,
                         config.window);
    };

    MinimizeOptions minimize_options;
    minimize_options.max_iterations = config.max_iterations;
    minimize_options.f_tolerance = config.tolerance;

    // Restart 0 from a mild heuristic center; the rest from seeded uniform
    // points in the box.
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::array<double, 5> center{1.0, 0.1, 1.0, 1.0, 10.0};

    FitResult best;
    best.entity_id = entity_id;
    best.train_days = static_cast<int>(train_segment.size());
    best.train_rmse = std::numeric_limits<double>::infinity();

    for (int r = 0; r < std::max(1, config.restarts); ++r) {
        std::array<double, 5> x0;
        if (r == 0) {
            for (std::size_t i = 0; i < 5; ++i) x0[i] = std::clamp(center[i], lo[i], hi[i]);
        } else {
            for (std::size_t i = 0; i < 5; ++i) x0[i] = lo[i] + unit(rng) * (hi[i] - lo[i]);
        }
        const MinimizeResult run = minimize_box(objective_fn, lo, hi, x0, minimize_options);
        best.restarts_used = r + 1;
        if (run.fx < best.train_rmse) {
            best.train_rmse = run.fx;
            best.params = params_from_vector(run.x, config);
            best.converged = run.converged;
            best.iterations = run.iterations;
        }
        if (best.train_rmse < 1e-6) break;
    }

    if (!eval_segment.empty()) {
        DocSchedule full;
        full.counts.assign(schedule.counts.begin(),
                           schedule.counts.begin() + static_cast<std::ptrdiff_t>(total_days));
        SimOptions options;
        options.mode = SimMode::expectation;
        options.window = config.window;
        const SimTrajectory trajectory = simulate(best.params, full, options);
        const std::span<const double> sim_eval{
            trajectory.entropy_bits.data() + train_segment.size(), eval_segment.size()};
        best.test_rmse = rmse(sim_eval, eval_segment);
    }
    return best;
}

std::optional<FitResult> fit_entity(const EntropySeries& observed,
                                    const DocSchedule& schedule,
                                    const FitConfig& config) {
    const auto split = split_train_eval(observed, config.train_days, config.eval_days);
    if (!split) return std::nullopt;

    const std::size_t needed = split->anchor + split->train.size() + split->eval.size();
    if (schedule.days() < needed)
        throw Error("fit_entity: schedule shorter than the anchored fit window");

    DocSchedule aligned;
    aligned.counts.assign(
        schedule.counts.begin() + static_cast<std::ptrdiff_t>(split->anchor),
        schedule.counts.begin() + static_cast<std::ptrdiff_t>(needed));
    return fit_segment(observed.entity_id, split->train, split->eval, aligned, config);
}

std::vector<FitSummaryRow> fit_summary(std::span<const FitResult> results,
                                       FitMetric metric) {
    std::map<int, std::vector<double>> groups;
    for (const auto& result : results) {
        groups[result.train_days].push_back(
            metric == FitMetric::test ? result.test_rmse : result.train_rmse);
    }
    std::vector<FitSummaryRow> rows;
    rows.reserve(groups.size());
    for (const auto& [train_days, values] : groups) {
        FitSummaryRow row;
        row.train_days = train_days;
        row.mean_rmse = stats::mean(values);
        row.median_rmse = stats::median_lower(values);
        row.std_rmse = stats::stddev_population(values);
        row.valid_samples = values.size();
        rows.push_back(row);
    }
    return rows;
}

std::optional<FactVolumeFit> fit_global_fact_params(const CorpusIndex& index) {
    // Per-document fact volume summed over all entities.
    std::map<std::string, std::int64_t> doc_totals;
    for (const auto& table : index.fact_tables())
        for (const auto& [doc_id, count] : table.counts) doc_totals[doc_id] += count;

    std::vector<double> log_counts;
    log_counts.reserve(doc_totals.size());
    for (const auto& [doc_id, total] : doc_totals)
        if (total > 0) log_counts.push_back(std::log(static_cast<double>(total)));
    if (log_counts.size() < 2) return std::nullopt;

    FactVolumeFit fit;
    fit.mu = stats::mean(log_counts);
    fit.sigma = stats::stddev_population(log_counts);
    fit.degenerate = !(fit.sigma > 0.0);
    return fit;
}

}  // namespace entroscope
