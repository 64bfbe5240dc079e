#include "docmap/pipeline.hpp"

#include "docmap/layers.hpp"

namespace docmap {

MapBundle analyze_results(const RankedResult& ranked, std::string_view query,
                          const PipelineConfig& config) {
  auto query_terms = tokenize(query, config.analysis);
  auto specs = generate_layers(query_terms);

  std::vector<Document> retrieved;
  retrieved.reserve(ranked.size());
  for (const auto& e : ranked.entries) retrieved.push_back(e.doc);
  InvertedIndex index(std::move(retrieved), config.analysis);
  TermVector query_vector = index.query_vector(query_terms);

  std::vector<ScoredLayer> query_layers;
  for (auto& spec : specs) {
    LayerScores scores = score_query_layer(spec, index, query_vector);
    query_layers.push_back({std::move(spec), std::move(scores), std::nullopt});
  }

  std::vector<ScoredLayer> cluster_layers;
  for (auto& c : cluster_documents(index, config.cluster)) {
    LayerSpec spec{c.cluster_id, LayerKind::kCluster, c.label.text(), {}};
    cluster_layers.push_back(
        {std::move(spec), membership_scores(c, index), c.members});
  }

  return build_bundle(ranked, query_layers, cluster_layers, config.grid,
                      std::string(query));
}

}  // namespace docmap
