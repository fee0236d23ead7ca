#include "entroscope/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "entroscope/stats.hpp"

namespace entroscope {

EntityDistribution build_distribution(const FactTable& table) {
    if (table.total_facts < 1)
        throw Error("entity has no facts: \"" + table.entity_id + "\"");
    EntityDistribution dist;
    dist.entity_id = table.entity_id;
    const double total = static_cast<double>(table.total_facts);
    for (const auto& [doc_id, count] : table.counts)
        dist.probs.emplace(doc_id, static_cast<double>(count) / total);
    return dist;
}

double entropy_bits(const EntityDistribution& dist) {
    if (dist.probs.size() <= 1) return 0.0;
    double h = 0.0;
    for (const auto& [doc_id, p] : dist.probs) h -= p * std::log2(p);
    return std::max(h, 0.0);
}

double weight_entropy_bits(std::span<const double> weights) {
    double total = 0.0;
    std::size_t nonzero = 0;
    for (double w : weights) {
        if (w > 0.0) {
            total += w;
            ++nonzero;
        }
    }
    if (nonzero <= 1) return 0.0;
    double h = 0.0;
    for (double w : weights) {
        if (w > 0.0) {
            const double p = w / total;
            h -= p * std::log2(p);
        }
    }
    return std::max(h, 0.0);
}

double max_corpus_entropy(std::size_t n_docs) {
    if (n_docs < 1) throw Error("max_corpus_entropy requires at least one document");
    return std::log2(static_cast<double>(n_docs));
}

std::size_t coverage_count(const FactTable& table, double threshold) {
    if (!(threshold > 0.0) || threshold > 1.0)
        throw Error("coverage threshold must lie in (0,1]");
    if (table.total_facts < 1)
        throw Error("entity has no facts: \"" + table.entity_id + "\"");

    std::vector<std::int64_t> counts;
    counts.reserve(table.counts.size());
    for (const auto& [doc_id, count] : table.counts) counts.push_back(count);
    std::sort(counts.begin(), counts.end(), std::greater<>());

    const double total = static_cast<double>(table.total_facts);
    std::int64_t cum = 0;
    std::size_t used = 0;
    for (std::int64_t c : counts) {
        cum += c;
        ++used;
        if (static_cast<double>(cum) / total >= threshold) return used;
    }
    return counts.size();
}

std::vector<std::pair<std::string, std::size_t>> coverage_rank_table(
    const CorpusIndex& index, double threshold) {
    std::vector<std::pair<std::string, std::size_t>> rows;
    rows.reserve(index.fact_tables().size());
    for (const auto& table : index.fact_tables())
        rows.emplace_back(table.entity_id, coverage_count(table, threshold));
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return rows;
}

std::vector<EntropyProfile> entropy_profiles(const CorpusIndex& index) {
    std::vector<EntropyProfile> profiles;
    profiles.reserve(index.fact_tables().size());
    const double corpus_max =
        index.doc_count() >= 1 ? max_corpus_entropy(index.doc_count()) : 0.0;
    for (const auto& table : index.fact_tables()) {
        EntropyProfile profile;
        profile.entity_id = table.entity_id;
        profile.entropy_bits = entropy_bits(build_distribution(table));
        profile.total_facts = table.total_facts;
        profile.doc_count = table.doc_count();
        profile.corpus_max_bits = corpus_max;
        profiles.push_back(std::move(profile));
    }
    return profiles;
}

std::vector<CategoryStats> category_stats(const CorpusIndex& index) {
    std::map<std::string, std::vector<double>> groups;
    for (const auto& table : index.fact_tables()) {
        const auto* entity = index.find_entity(table.entity_id);
        const std::string category = entity ? entity->category : "UNKNOWN";
        groups[category].push_back(entropy_bits(build_distribution(table)));
    }

    std::vector<CategoryStats> rows;
    rows.reserve(groups.size());
    for (const auto& [category, entropies] : groups) {
        CategoryStats row;
        row.category = category;
        row.mean_entropy = stats::mean(entropies);
        row.median_entropy = stats::median_lower(entropies);
        row.std_dev = stats::stddev_population(entropies);
        row.count = entropies.size();
        rows.push_back(std::move(row));
    }
    return rows;
}

SizeEntropyResult size_entropy_pairs(const CorpusIndex& index) {
    SizeEntropyResult result;
    std::vector<double> sizes, entropies;
    for (const auto& table : index.fact_tables()) {
        SizeEntropyPoint point;
        point.entity_id = table.entity_id;
        point.total_facts = table.total_facts;
        point.entropy_bits = entropy_bits(build_distribution(table));
        sizes.push_back(static_cast<double>(point.total_facts));
        entropies.push_back(point.entropy_bits);
        result.points.push_back(std::move(point));
    }
    result.spearman = stats::spearman(sizes, entropies);
    result.pearson = stats::pearson(sizes, entropies);
    return result;
}

}  // namespace entroscope
