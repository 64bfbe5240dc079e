#include "docmap/layers.hpp"

#include <algorithm>
#include <set>

#include "docmap/error.hpp"

namespace docmap {

namespace {

std::string join(std::span<const std::string> terms, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += sep;
    out += terms[i];
  }
  return out;
}

// Term and conjunction layers read weights off the unit-length document
// vector, so a one-term query ranks identically under its term layer and its
// vector layer regardless of document length.
TermVector unit_length(const TermVector& v) {
  const double n = v.norm();
  if (n == 0.0) return v;
  TermVector out;
  for (const auto& [term, w] : v.entries()) out.set(term, w / n);
  return out;
}

}  // namespace

std::string_view layer_kind_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::kVector: return "vector";
    case LayerKind::kConjunction: return "conjunction";
    case LayerKind::kTerm: return "term";
    case LayerKind::kCluster: return "cluster";
  }
  return "unknown";
}

std::vector<std::string> distinct_terms(std::span<const std::string> terms) {
  std::vector<std::string> out;
  std::set<std::string_view> seen;
  for (const auto& t : terms) {
    if (seen.insert(t).second) out.push_back(t);
  }
  return out;
}

std::vector<LayerSpec> generate_layers(
    std::span<const std::string> query_terms) {
  auto terms = distinct_terms(query_terms);
  if (terms.empty()) {
    throw Error(ErrorCode::kEmptyQuery, "query has no terms after analysis");
  }
  std::vector<LayerSpec> layers;
  layers.push_back({"q-vector", LayerKind::kVector, "all: " + join(terms, " "),
                    terms});
  if (terms.size() >= 2) {
    layers.push_back({"q-and", LayerKind::kConjunction, join(terms, " AND "),
                      terms});
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    layers.push_back({"q-term-" + std::to_string(i + 1), LayerKind::kTerm,
                      terms[i], {terms[i]}});
  }
  return layers;
}

double layer_raw_score(const LayerSpec& layer, const TermVector& doc_vector,
                       const TermVector& query_vector) {
  switch (layer.kind) {
    case LayerKind::kVector:
      return cosine_sim(query_vector, doc_vector);
    case LayerKind::kTerm:
      if (layer.terms.size() != 1) {
        throw Error(ErrorCode::kInvalidLayer,
                    "term layer " + layer.layer_id + " needs exactly one term");
      }
      return doc_vector.get(layer.terms.front());
    case LayerKind::kConjunction: {
      if (layer.terms.size() < 2) {
        throw Error(ErrorCode::kInvalidLayer, "conjunction layer " +
                                                  layer.layer_id +
                                                  " needs at least two terms");
      }
      double m = doc_vector.get(layer.terms.front());
      for (const auto& t : layer.terms) m = std::min(m, doc_vector.get(t));
      return m;
    }
    case LayerKind::kCluster:
      break;
  }
  throw Error(ErrorCode::kInvalidLayer,
              "cluster layer " + layer.layer_id + " has no query score");
}

ScoreMap normalize_brightness(const ScoreMap& raw) {
  if (raw.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "normalize_brightness: empty score map");
  }
  auto [lo_it, hi_it] = std::minmax_element(
      raw.begin(), raw.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  const double lo = lo_it->second;
  const double hi = hi_it->second;
  ScoreMap out;
  for (const auto& [id, r] : raw) {
    out.emplace(id, hi == lo ? 1.0 : (r - lo) / (hi - lo));
  }
  return out;
}

LayerScores score_query_layer(const LayerSpec& layer,
                              const InvertedIndex& index,
                              const TermVector& query_vector) {
  LayerScores scores;
  for (const auto& d : index.documents()) {
    scores.raw.emplace(
        d.id, layer_raw_score(layer, unit_length(index.doc_vector(d.id)),
                              query_vector));
  }
  if (!scores.raw.empty()) scores.brightness = normalize_brightness(scores.raw);
  return scores;
}

}  // namespace docmap
