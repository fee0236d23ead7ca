#pragma once
// Entity entropy: the probability distribution of an entity's facts over
// documents, its Shannon entropy in bits, corpus bounds, coverage counts
// and the cross-sectional corpus analytics built from them.
//
// All operations are pure functions over the immutable corpus index.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entroscope/corpus.hpp"

namespace entroscope {

// p_E(d) = f_E(d) / sum_d' f_E(d'). Keys are exactly the documents with a
// positive fact count, so every probability is strictly positive.
struct EntityDistribution {
    std::string entity_id;
    std::map<std::string, double> probs;
};

struct EntropyProfile {
    std::string entity_id;
    double entropy_bits = 0.0;
    std::int64_t total_facts = 0;
    std::size_t doc_count = 0;
    double corpus_max_bits = 0.0;  // log2(N) for the whole corpus
};

struct CategoryStats {
    std::string category;
    double mean_entropy = 0.0;
    double median_entropy = 0.0;  // lower-middle convention for even groups
    double std_dev = 0.0;         // population standard deviation
    std::size_t count = 0;
};

struct SizeEntropyPoint {
    std::string entity_id;
    std::int64_t total_facts = 0;
    double entropy_bits = 0.0;
};

struct SizeEntropyResult {
    std::vector<SizeEntropyPoint> points;   // one per admitted entity, id order
    std::optional<double> spearman;         // absent below 2 entities or at zero variance
    std::optional<double> pearson;
};

// Throws Error on an empty table.
EntityDistribution build_distribution(const FactTable& table);

// H(E) = -sum_d p log2 p. Exactly 0 for single-document distributions.
double entropy_bits(const EntityDistribution& dist);

// Entropy in bits of an arbitrary nonnegative weight vector (zeros are
// ignored). Used wherever a distribution is implied by raw masses rather
// than an explicit FactTable.
double weight_entropy_bits(std::span<const double> weights);

// log2(n_docs): the entropy an entity spread uniformly over the whole
// corpus would have. Throws Error for n_docs < 1.
double max_corpus_entropy(std::size_t n_docs);

// Minimal number of documents whose combined fact share reaches the
// threshold. Greedy over descending counts, which is optimal for minimal
// cardinality. threshold must lie in (0, 1].
std::size_t coverage_count(const FactTable& table, double threshold);

// (entity_id, coverage_count) sorted by count descending, entity_id
// ascending on ties.
std::vector<std::pair<std::string, std::size_t>> coverage_rank_table(
    const CorpusIndex& index, double threshold);

// One profile per admitted entity, in entity_id order.
std::vector<EntropyProfile> entropy_profiles(const CorpusIndex& index);

// Per-category entropy statistics, rows sorted by category name.
std::vector<CategoryStats> category_stats(const CorpusIndex& index);

// (total facts, entropy) per entity plus the rank correlation between them.
SizeEntropyResult size_entropy_pairs(const CorpusIndex& index);

}  // namespace entroscope
