#include "entroscope/genmodel.hpp"

#include <algorithm>
#include <cmath>

#include "entroscope/parallel.hpp"

namespace entroscope {

namespace {

// splitmix64 step; decorrelates per-entity seeds derived from a base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

void GenParams::validate() const {
    if (!std::isfinite(alpha_e)) throw Error("alpha_e must be finite");
    if (!(delta_e >= 0.0)) throw Error("delta_e must be >= 0");
    if (!(alpha_local >= 0.0)) throw Error("alpha_local must be >= 0");
    if (!(alpha_global >= 0.0)) throw Error("alpha_global must be >= 0");
    if (!(alpha_docs > 0.0)) throw Error("alpha_docs must be > 0");
    if (!std::isfinite(mu_facts)) throw Error("mu_facts must be finite");
    if (!(sigma_facts > 0.0)) throw Error("sigma_facts must be > 0");
}

std::int64_t DocSchedule::total_docs() const {
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

void DocSchedule::validate() const {
    for (auto c : counts)
        if (c < 0) throw Error("document schedule counts must be >= 0");
}

DocSchedule DocSchedule::from_corpus(const CorpusIndex& index, DayIndex start_day,
                                     std::size_t days) {
    DocSchedule schedule;
    schedule.counts.assign(days, 0);
    for (const auto& doc : index.documents()) {
        if (!doc.created_day) continue;
        const auto offset = static_cast<std::int64_t>(*doc.created_day) - start_day;
        if (offset >= 0 && offset < static_cast<std::int64_t>(days))
            schedule.counts[static_cast<std::size_t>(offset)] += 1;
    }
    return schedule;
}

DocSchedule DocSchedule::from_lognormal(double mu, double sigma, std::size_t days,
                                        std::uint64_t seed) {
    if (!(sigma > 0.0)) throw Error("schedule sigma must be > 0");
    DocSchedule schedule;
    schedule.counts.reserve(days);
    std::mt19937_64 rng(seed);
    std::lognormal_distribution<double> dist(mu, sigma);
    for (std::size_t t = 0; t < days; ++t)
        schedule.counts.push_back(std::max<std::int64_t>(0, std::llround(dist(rng))));
    return schedule;
}

double softsign(double x) noexcept { return x / (1.0 + std::abs(x)); }

double clamped_softsign(double x) noexcept { return std::max(0.0, softsign(x)); }

double entropy_feedback(double h_prev, double h_total,
                        double alpha_local, double alpha_global) noexcept {
    return (1.0 + alpha_local * h_prev) / (1.0 + alpha_global * h_total);
}

double mean_proportion(const GenParams& params, std::int64_t t,
                       double h_prev, double h_total) {
    const double baseline = params.alpha_e * std::exp(-params.delta_e * static_cast<double>(t));
    const double gamma =
        entropy_feedback(h_prev, h_total, params.alpha_local, params.alpha_global);
    return clamped_softsign(baseline + gamma);
}

double sample_doc_length(double mu, double sigma, std::mt19937_64& rng) {
    std::lognormal_distribution<double> dist(mu, sigma);
    return dist(rng);
}

double sample_proportion(double pbar, double alpha_docs, std::mt19937_64& rng) {
    if (pbar <= 0.0) return 0.0;
    if (pbar >= 1.0) return 1.0;
    const double p = std::clamp(pbar, 1e-9, 1.0 - 1e-9);
    std::gamma_distribution<double> ga(alpha_docs * p, 1.0);
    std::gamma_distribution<double> gb(alpha_docs * (1.0 - p), 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    if (x + y <= 0.0) return p;  // both shapes underflowed to zero draws
    return x / (x + y);
}

SimTrajectory simulate(const GenParams& params, const DocSchedule& schedule,
                       const SimOptions& options) {
    params.validate();
    schedule.validate();

    const std::size_t days = schedule.days();
    SimTrajectory out;
    out.entropy_bits.reserve(days);
    out.pbar.reserve(days);
    out.baseline_term.reserve(days);
    out.feedback_term.reserve(days);
    out.doc_facts.reserve(days);

    std::mt19937_64 rng(options.seed);
    const double mean_length =
        std::exp(params.mu_facts + 0.5 * params.sigma_facts * params.sigma_facts);

    // Running sums for incremental entropy: H = log2(S) - Q/S with
    // S = total mass and Q = sum of m*log2(m) over nonzero masses.
    double sum_mass = 0.0, sum_mlog2m = 0.0;
    std::size_t nonzero_docs = 0;
    double cumulative_entropy = 0.0;
    double prev_day_entropy = 0.0;

    for (std::size_t t = 0; t < days; ++t) {
        const double h_total = cumulative_entropy;
        const double h_prev = options.window == FeedbackWindow::day_local
                                  ? prev_day_entropy
                                  : cumulative_entropy;
        const double baseline =
            params.alpha_e * std::exp(-params.delta_e * static_cast<double>(t));
        const double gamma =
            entropy_feedback(h_prev, h_total, params.alpha_local, params.alpha_global);
        const double pbar = clamped_softsign(baseline + gamma);

        std::vector<double> facts(static_cast<std::size_t>(schedule.counts[t]), 0.0);
        double day_mass = 0.0, day_mlog2m = 0.0;
        std::size_t day_nonzero = 0;
        for (auto& f : facts) {
            if (options.mode == SimMode::expectation) {
                f = pbar * mean_length;
            } else {
                const double p = sample_proportion(pbar, params.alpha_docs, rng);
                const double len =
                    sample_doc_length(params.mu_facts, params.sigma_facts, rng);
                f = static_cast<double>(std::llround(p * len));
            }
            if (f > 0.0) {
                const double contrib = f * std::log2(f);
                sum_mass += f;
                sum_mlog2m += contrib;
                ++nonzero_docs;
                day_mass += f;
                day_mlog2m += contrib;
                ++day_nonzero;
            }
        }

        cumulative_entropy =
            nonzero_docs <= 1 ? 0.0
                              : std::max(0.0, std::log2(sum_mass) - sum_mlog2m / sum_mass);
        prev_day_entropy =
            day_nonzero <= 1 ? 0.0
                             : std::max(0.0, std::log2(day_mass) - day_mlog2m / day_mass);

        out.entropy_bits.push_back(cumulative_entropy);
        out.pbar.push_back(pbar);
        out.baseline_term.push_back(baseline);
        out.feedback_term.push_back(gamma);
        out.doc_facts.push_back(std::move(facts));
    }
    return out;
}

double ParamDist::sample(std::mt19937_64& rng) const {
    switch (kind) {
        case Kind::constant:
            return a;
        case Kind::uniform:
            return std::uniform_real_distribution<double>(a, b)(rng);
        case Kind::lognormal:
            return std::lognormal_distribution<double>(a, b)(rng);
        case Kind::normal:
            return std::normal_distribution<double>(a, b)(rng);
    }
    return a;
}

PopulationRun simulate_population(const PopulationSpec& spec,
                                  const DocSchedule& schedule,
                                  const SimOptions& options) {
    PopulationRun run;
    run.params.resize(spec.n_entities);
    run.trajectories.resize(spec.n_entities);

    // Parameter draws come from a single stream so the population is a
    // deterministic function of the spec and base seed.
    std::mt19937_64 param_rng(mix_seed(options.seed, 0x706f70));
    for (auto& p : run.params) {
        p.alpha_e = spec.alpha_e.sample(param_rng);
        p.delta_e = std::max(0.0, spec.delta_e.sample(param_rng));
        p.alpha_local = std::max(0.0, spec.alpha_local.sample(param_rng));
        p.alpha_global = std::max(0.0, spec.alpha_global.sample(param_rng));
        p.alpha_docs = std::max(1e-3, spec.alpha_docs.sample(param_rng));
        p.mu_facts = spec.mu_facts;
        p.sigma_facts = spec.sigma_facts;
    }

    parallel_for(spec.n_entities, [&](std::size_t i) {
        SimOptions entity_options = options;
        entity_options.seed = mix_seed(options.seed, i + 1);
        run.trajectories[i] = simulate(run.params[i], schedule, entity_options);
    });
    return run;
}

}  // namespace entroscope
