#pragma once

#include <string_view>

#include "docmap/bundle.hpp"
#include "docmap/clustering.hpp"
#include "docmap/index.hpp"
#include "docmap/text.hpp"

namespace docmap {

struct PipelineConfig {
  GridSpec grid;
  AnalysisConfig analysis = AnalysisConfig::defaults();
  ClusterConfig cluster;
};

// The analysis step of a search: indexes the retrieved set, scores the
// query layers, clusters the set and assembles the bundle. `ranked` must
// already fit the grid. Throws Error(kEmptyQuery) if the query analyzes to
// nothing.
MapBundle analyze_results(const RankedResult& ranked, std::string_view query,
                          const PipelineConfig& config);

}  // namespace docmap
