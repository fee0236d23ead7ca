#include "commands.hpp"

#include "entroscope/csv.hpp"
#include "entroscope/overlap.hpp"
#include "util.hpp"

namespace entroscope::cli {

void run_overlap(const OverlapOptions& options) {
    const CorpusIndex index = load_filtered_corpus(options.corpus);
    const auto out = ensure_out_dir(options.out_dir);

    OverlapGraph graph = build_overlap(index);
    if (options.min_weight > 1) graph = filter_min_weight(graph, options.min_weight);

    {
        CsvWriter csv((out / "edges.csv").string());
        csv.row({"entity_i", "entity_j", "shared_docs"});
        for (const auto& [pair, weight] : graph.edges)
            csv.row({graph.nodes[pair.first], graph.nodes[pair.second],
                     std::to_string(weight)});
    }
    {
        const auto matrix = adjacency_matrix(graph);
        CsvWriter csv((out / "adjacency.csv").string());
        std::vector<std::string> header{"entity_id"};
        header.insert(header.end(), graph.nodes.begin(), graph.nodes.end());
        csv.row_vector(header);
        for (std::size_t i = 0; i < matrix.size(); ++i) {
            std::vector<std::string> cells{graph.nodes[i]};
            for (auto w : matrix[i]) cells.push_back(std::to_string(w));
            csv.row_vector(cells);
        }
    }

    nlohmann::json summary{
        {"n_nodes", graph.node_count()},
        {"n_edges", graph.edge_count()},
        {"min_weight", options.min_weight},
        {"connectivity", nullptr},
    };
    if (const auto c = connectivity(graph)) summary["connectivity"] = *c;
    if (options.top_k) {
        const OverlapGraph sub = top_k_subgraph(graph, *options.top_k);
        nlohmann::json top{
            {"k", *options.top_k},
            {"n_edges", sub.edge_count()},
            {"connectivity", nullptr},
        };
        if (const auto c = connectivity(sub)) top["connectivity"] = *c;
        summary["top_k"] = top;
    }
    write_json_file(out / "connectivity.json", summary);
}

}  // namespace entroscope::cli
