#pragma once
// Entity-entity shared-document graph. Two entities are connected iff they
// share at least one document; edge weight is the number of shared
// documents. Only document membership matters, never fact multiplicity.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entroscope/corpus.hpp"

namespace entroscope {

struct OverlapGraph {
    // Entity ids ordered by total associated documents descending,
    // entity_id ascending on ties.
    std::vector<std::string> nodes;
    // (i, j) with i < j in node order -> shared document count >= 1.
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> edges;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }
};

OverlapGraph build_overlap(const CorpusIndex& index);

// edge_count / (n choose 2). Absent for graphs with fewer than two nodes.
std::optional<double> connectivity(const OverlapGraph& graph);

// Induced subgraph on the first k nodes in node order. Throws Error when
// k is outside [1, node_count].
OverlapGraph top_k_subgraph(const OverlapGraph& graph, std::size_t k);

// Drops edges with weight below min_weight; node order is unchanged.
// Intended for CLI thresholding of dense corpora.
OverlapGraph filter_min_weight(const OverlapGraph& graph, std::int64_t min_weight);

// Dense symmetric matrix in node order, zero diagonal, 0 = no shared docs.
std::vector<std::vector<std::int64_t>> adjacency_matrix(const OverlapGraph& graph);

}  // namespace entroscope
