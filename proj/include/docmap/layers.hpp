#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docmap/index.hpp"

namespace docmap {

enum class LayerKind { kVector, kConjunction, kTerm, kCluster };

std::string_view layer_kind_name(LayerKind kind);

struct LayerSpec {
  std::string layer_id;
  LayerKind kind = LayerKind::kVector;
  std::string label;
  std::vector<std::string> terms;  // empty for cluster layers

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

using ScoreMap = std::map<std::string, double, std::less<>>;

struct LayerScores {
  ScoreMap raw;
  ScoreMap brightness;
};

// Distinct terms in first-occurrence order.
std::vector<std::string> distinct_terms(std::span<const std::string> terms);

// Query tabs: vector(all), conjunction(all), then one term tab per query
// term in query order. With a single term the conjunction is dropped.
// Duplicates are collapsed first; throws Error(kEmptyQuery) if nothing
// remains.
std::vector<LayerSpec> generate_layers(std::span<const std::string> query_terms);

// Vector: cosine(query, doc). Term: the doc's weight for the term.
// Conjunction: min of the doc's weights over its terms (graded AND).
// Throws Error(kInvalidLayer) for cluster layers.
double layer_raw_score(const LayerSpec& layer, const TermVector& doc_vector,
                       const TermVector& query_vector);

// Linear min-max map onto [0,1]; a constant map becomes all 1.0.
// Throws Error(kInvalidArgument) on an empty map.
ScoreMap normalize_brightness(const ScoreMap& raw);

// Raw and brightness scores of one query layer over every document of the
// index (which holds exactly the retrieved set). Document vectors are scaled
// to unit length first; cosine is unaffected, and term weights become
// comparable across documents of different length.
LayerScores score_query_layer(const LayerSpec& layer, const InvertedIndex& index,
                              const TermVector& query_vector);

}  // namespace docmap
