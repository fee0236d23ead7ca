#pragma once
// Hierarchical entropy-feedback generative model of entity knowledge growth.
//
// Each day t a batch of new documents arrives. The mean proportion of each
// document devoted to the entity is
//
//     pbar(t) = softsign( alpha_e * exp(-delta_e * t) + gamma )
//     gamma   = (1 + alpha_local * H_prev) / (1 + alpha_global * H)
//
// where H is the cumulative entropy so far and H_prev is the entropy of the
// previous day's documents (or the cumulative value, selectable). Each
// document then draws its own proportion from a Beta centered on pbar and a
// fact volume from a lognormal; their product is the document's fact count.
//
// Two modes: stochastic (seeded draws, integer fact counts) and expectation
// (all draws replaced by their means, real-valued fact masses — the smooth
// variant used for fitting).

#include <cstdint>
#include <random>
#include <vector>

#include "entroscope/corpus.hpp"

namespace entroscope {

struct GenParams {
    double alpha_e = 1.0;       // baseline importance
    double delta_e = 0.1;       // baseline decay rate, >= 0
    double alpha_local = 0.0;   // recent-entropy feedback weight, >= 0
    double alpha_global = 0.0;  // cumulative-entropy saturation weight, >= 0
    double alpha_docs = 10.0;   // Beta concentration, > 0
    double mu_facts = 0.0;      // lognormal mu of per-document fact volume
    double sigma_facts = 1.0;   // lognormal sigma, > 0

    // Throws Error naming the first offending field.
    void validate() const;
};

// Day-indexed counts of newly created documents; length is the horizon.
struct DocSchedule {
    std::vector<std::int64_t> counts;

    std::size_t days() const { return counts.size(); }
    std::int64_t total_docs() const;
    void validate() const;  // every count >= 0

    // Corpus-wide documents created per day over [start_day, start_day + days).
    // Undated documents are ignored.
    static DocSchedule from_corpus(const CorpusIndex& index, DayIndex start_day,
                                   std::size_t days);
    // Daily counts drawn as round(LogNormal(mu, sigma)), clamped at 0.
    static DocSchedule from_lognormal(double mu, double sigma, std::size_t days,
                                      std::uint64_t seed);
};

// Raw softsign x / (1 + |x|), range (-1, 1).
double softsign(double x) noexcept;

// softsign clamped below at 0, so the result is a valid proportion in [0, 1).
double clamped_softsign(double x) noexcept;

// gamma: (1 + alpha_local * h_prev) / (1 + alpha_global * h_total).
// Equals 1 when both entropies are 0; exceeds 1 exactly when
// alpha_local * h_prev > alpha_global * h_total.
double entropy_feedback(double h_prev, double h_total,
                        double alpha_local, double alpha_global) noexcept;

// pbar(E, t) = clamped_softsign(alpha_e * exp(-delta_e * t) + gamma).
double mean_proportion(const GenParams& params, std::int64_t t,
                       double h_prev, double h_total);

// One lognormal fact-volume draw, exp(Normal(mu, sigma^2)).
double sample_doc_length(double mu, double sigma, std::mt19937_64& rng);

// One Beta(alpha_docs*pbar, alpha_docs*(1-pbar)) draw. pbar of exactly 0 or
// 1 is returned as a point mass; interior values are clamped away from the
// endpoints so both Beta parameters stay positive.
double sample_proportion(double pbar, double alpha_docs, std::mt19937_64& rng);

enum class SimMode { stochastic, expectation };

// Which window defines H_prev in the feedback numerator: the entropy of
// documents created on day t-1 only (day_local) or the cumulative entropy
// through day t-1 (cumulative).
enum class FeedbackWindow { day_local, cumulative };

struct SimOptions {
    SimMode mode = SimMode::expectation;
    std::uint64_t seed = 0;
    FeedbackWindow window = FeedbackWindow::day_local;
};

struct SimTrajectory {
    std::vector<double> entropy_bits;   // cumulative entropy at end of day t
    std::vector<double> pbar;           // mean proportion used on day t
    std::vector<double> baseline_term;  // alpha_e * exp(-delta_e * t)
    std::vector<double> feedback_term;  // gamma value on day t
    std::vector<std::vector<double>> doc_facts;  // per-day fact count per new doc
};

// Expectation mode is a deterministic function of (params, schedule);
// stochastic mode additionally of the seed.
SimTrajectory simulate(const GenParams& params, const DocSchedule& schedule,
                       const SimOptions& options);

// --- population studies -----------------------------------------------

struct ParamDist {
    enum class Kind { constant, uniform, lognormal, normal };
    Kind kind = Kind::constant;
    double a = 0.0;  // constant value / uniform lo / lognormal-normal mu
    double b = 0.0;  // uniform hi / lognormal-normal sigma

    static ParamDist constant(double value) { return {Kind::constant, value, 0.0}; }
    static ParamDist uniform(double lo, double hi) { return {Kind::uniform, lo, hi}; }
    static ParamDist lognormal(double mu, double sigma) { return {Kind::lognormal, mu, sigma}; }
    static ParamDist normal(double mu, double sigma) { return {Kind::normal, mu, sigma}; }

    double sample(std::mt19937_64& rng) const;
};

struct PopulationSpec {
    std::size_t n_entities = 0;
    ParamDist alpha_e = ParamDist::constant(1.0);
    ParamDist delta_e = ParamDist::constant(0.1);
    ParamDist alpha_local = ParamDist::constant(0.0);
    ParamDist alpha_global = ParamDist::constant(0.0);
    ParamDist alpha_docs = ParamDist::constant(10.0);
    double mu_facts = 0.0;     // shared across the population
    double sigma_facts = 1.0;
};

struct PopulationRun {
    std::vector<GenParams> params;       // one per entity
    std::vector<SimTrajectory> trajectories;
};

// Simulates n_entities independent trajectories over the same schedule.
// Per-entity seeds are derived from options.seed, so results do not depend
// on evaluation order.
PopulationRun simulate_population(const PopulationSpec& spec,
                                  const DocSchedule& schedule,
                                  const SimOptions& options);

}  // namespace entroscope
