#include "commands.hpp"

#include <cmath>

#include "entroscope/csv.hpp"
#include "entroscope/report.hpp"
#include "entroscope/stats.hpp"
#include "util.hpp"

namespace entroscope::cli {

namespace {

DocSchedule build_schedule(const SimulateOptions& options) {
    const bool from_file = !options.schedule_file.empty();
    const bool from_lognormal = options.schedule_mu.has_value();
    const bool from_corpus = !options.corpus.docs_path.empty();
    const int sources = static_cast<int>(from_file) + static_cast<int>(from_lognormal) +
                        static_cast<int>(from_corpus);
    if (sources != 1)
        throw Error("exactly one schedule source required: --schedule-file, "
                    "--schedule-lognormal or corpus paths");

    if (from_file) {
        const auto j = read_json_file(options.schedule_file);
        if (!j.is_array()) throw Error(options.schedule_file + ": expected a JSON array");
        DocSchedule schedule;
        for (const auto& v : j) {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
                throw Error(options.schedule_file + ": counts must be integers >= 0");
            schedule.counts.push_back(v.get<std::int64_t>());
        }
        if (options.days >= 0)
            schedule.counts.resize(static_cast<std::size_t>(options.days), 0);
        return schedule;
    }
    if (options.days < 1) throw Error("--days must be >= 1 for this schedule source");
    if (from_lognormal) {
        if (!options.schedule_sigma)
            throw Error("--schedule-lognormal needs both mu and sigma");
        return DocSchedule::from_lognormal(*options.schedule_mu, *options.schedule_sigma,
                                           static_cast<std::size_t>(options.days),
                                           options.schedule_seed);
    }
    const CorpusIndex index =
        load_corpus(options.corpus.docs_path, options.corpus.entities_path,
                    options.corpus.facts_path);
    std::optional<DayIndex> first;
    for (const auto& doc : index.documents())
        if (doc.created_day && (!first || *doc.created_day < *first))
            first = *doc.created_day;
    if (!first) throw EmptyDataError("corpus has no dated documents to schedule from");
    return DocSchedule::from_corpus(index, *first, static_cast<std::size_t>(options.days));
}

void write_trajectory(const std::filesystem::path& path, const SimTrajectory& trajectory) {
    CsvWriter csv(path.string());
    csv.row({"day", "entropy_bits", "pbar", "baseline_term", "feedback_term"});
    for (std::size_t t = 0; t < trajectory.entropy_bits.size(); ++t)
        csv.row({std::to_string(t), fmt_double(trajectory.entropy_bits[t]),
                 fmt_double(trajectory.pbar[t]), fmt_double(trajectory.baseline_term[t]),
                 fmt_double(trajectory.feedback_term[t])});
}

double value_at(const std::vector<double>& values, std::size_t day) {
    if (values.empty()) return 0.0;
    return values[std::min(day, values.size() - 1)];
}

}  // namespace

void run_simulate(const SimulateOptions& options) {
    if (options.params_path.empty() == options.population_path.empty())
        throw Error("exactly one of --params or --population is required");

    const auto out = ensure_out_dir(options.out_dir);
    const DocSchedule schedule = build_schedule(options);
    if (schedule.days() == 0) throw EmptyDataError("empty document schedule");

    SimOptions sim_options;
    sim_options.mode = parse_mode(options.mode);
    sim_options.window = parse_window(options.window);
    sim_options.seed = options.seed;

    {
        CsvWriter csv((out / "schedule.csv").string());
        csv.row({"day", "new_docs"});
        for (std::size_t t = 0; t < schedule.days(); ++t)
            csv.row({std::to_string(t), std::to_string(schedule.counts[t])});
    }

    if (!options.params_path.empty()) {
        const GenParams params = parse_gen_params(read_json_file(options.params_path));
        const SimTrajectory trajectory = simulate(params, schedule, sim_options);
        write_trajectory(out / "trajectory.csv", trajectory);
        return;
    }

    const PopulationSpec spec =
        parse_population_spec(read_json_file(options.population_path));
    if (spec.n_entities == 0) throw EmptyDataError("population with zero entities");
    const PopulationRun run = simulate_population(spec, schedule, sim_options);

    std::vector<double> finals, early;
    finals.reserve(spec.n_entities);
    {
        CsvWriter csv((out / "population.csv").string());
        csv.row({"entity", "alpha_e", "delta_e", "alpha_local", "alpha_global",
                 "alpha_docs", "entropy_day10", "entropy_final"});
        for (std::size_t i = 0; i < run.trajectories.size(); ++i) {
            const auto& p = run.params[i];
            const auto& values = run.trajectories[i].entropy_bits;
            const double h10 = value_at(values, 10);
            const double hf = values.empty() ? 0.0 : values.back();
            early.push_back(h10);
            finals.push_back(hf);
            csv.row({std::to_string(i), fmt_double(p.alpha_e), fmt_double(p.delta_e),
                     fmt_double(p.alpha_local), fmt_double(p.alpha_global),
                     fmt_double(p.alpha_docs), fmt_double(h10), fmt_double(hf)});
        }
    }
    {
        const double hi = *std::max_element(finals.begin(), finals.end());
        const auto bins = histogram(finals, 50, 0.0, hi > 0.0 ? hi : 1.0);
        CsvWriter csv((out / "population_histogram.csv").string());
        csv.row({"bin_lo", "bin_hi", "count"});
        for (const auto& bin : bins)
            csv.row({fmt_double(bin.lo), fmt_double(bin.hi), std::to_string(bin.count)});
    }

    nlohmann::json summary{
        {"n_entities", spec.n_entities},
        {"mean_final_entropy", stats::mean(finals)},
        {"median_final_entropy", stats::median_lower(finals)},
        {"skewness_final_entropy", nullptr},
        {"spearman_day10_final", nullptr},
    };
    if (const auto skew = stats::sample_skewness(finals))
        summary["skewness_final_entropy"] = *skew;
    if (const auto rho = stats::spearman(early, finals))
        summary["spearman_day10_final"] = *rho;
    write_json_file(out / "population_summary.json", summary);
}

}  // namespace entroscope::cli
