#include "entroscope/overlap.hpp"

#include <algorithm>
#include <unordered_map>

namespace entroscope {

OverlapGraph build_overlap(const CorpusIndex& index) {
    OverlapGraph graph;

    const auto& tables = index.fact_tables();
    std::vector<std::size_t> order(tables.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (tables[a].doc_count() != tables[b].doc_count())
            return tables[a].doc_count() > tables[b].doc_count();
        return tables[a].entity_id < tables[b].entity_id;
    });

    std::unordered_map<std::string, std::size_t> node_of_entity;
    graph.nodes.reserve(order.size());
    for (std::size_t table_idx : order) {
        node_of_entity.emplace(tables[table_idx].entity_id, graph.nodes.size());
        graph.nodes.push_back(tables[table_idx].entity_id);
    }

    // Invert to doc -> member nodes, then count each co-occurring pair once
    // per shared document.
    std::unordered_map<std::string, std::vector<std::size_t>> doc_members;
    for (const auto& table : tables) {
        const std::size_t node = node_of_entity.at(table.entity_id);
        for (const auto& [doc_id, count] : table.counts) doc_members[doc_id].push_back(node);
    }
    for (auto& [doc_id, members] : doc_members) {
        std::sort(members.begin(), members.end());
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                graph.edges[{members[a], members[b]}] += 1;
    }
    return graph;
}

std::optional<double> connectivity(const OverlapGraph& graph) {
    const std::size_t n = graph.node_count();
    if (n < 2) return std::nullopt;
    const double possible = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(graph.edge_count()) / possible;
}

OverlapGraph top_k_subgraph(const OverlapGraph& graph, std::size_t k) {
    if (k < 1 || k > graph.node_count())
        throw Error("top_k_subgraph: k out of range [1, " +
                    std::to_string(graph.node_count()) + "]");
    OverlapGraph sub;
    sub.nodes.assign(graph.nodes.begin(), graph.nodes.begin() + static_cast<std::ptrdiff_t>(k));
    for (const auto& [pair, weight] : graph.edges)
        if (pair.second < k) sub.edges.emplace(pair, weight);
    return sub;
}

OverlapGraph filter_min_weight(const OverlapGraph& graph, std::int64_t min_weight) {
    OverlapGraph out;
    out.nodes = graph.nodes;
    for (const auto& [pair, weight] : graph.edges)
        if (weight >= min_weight) out.edges.emplace(pair, weight);
    return out;
}

std::vector<std::vector<std::int64_t>> adjacency_matrix(const OverlapGraph& graph) {
    const std::size_t n = graph.node_count();
    std::vector<std::vector<std::int64_t>> matrix(n, std::vector<std::int64_t>(n, 0));
    for (const auto& [pair, weight] : graph.edges) {
        matrix[pair.first][pair.second] = weight;
        matrix[pair.second][pair.first] = weight;
    }
    return matrix;
}

}  // namespace entroscope
