#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "docmap/error.hpp"
#include "docmap/layers.hpp"
#include "support.hpp"

namespace docmap {
namespace {

using testing::doc;
using Terms = std::vector<std::string>;

TermVector vec(std::initializer_list<std::pair<const char*, double>> entries) {
  TermVector v;
  for (const auto& [t, w] : entries) v.set(t, w);
  return v;
}

TEST(GenerateLayers, OneTerm) {
  Terms q{"cat"};
  auto layers = generate_layers(q);
  ASSERT_EQ(layers.size(), 2u);
  EXPECT_EQ(layers[0].kind, LayerKind::kVector);
  EXPECT_EQ(layers[1].kind, LayerKind::kTerm);
  EXPECT_EQ(layers[1].label, "cat");
}

TEST(GenerateLayers, TwoTerms) {
  Terms q{"cat", "dog"};
  auto layers = generate_layers(q);
  ASSERT_EQ(layers.size(), 4u);
  EXPECT_EQ(layers[0].layer_id, "q-vector");
  EXPECT_EQ(layers[1].kind, LayerKind::kConjunction);
  EXPECT_EQ(layers[1].terms, (Terms{"cat", "dog"}));
  EXPECT_EQ(layers[2].label, "cat");
  EXPECT_EQ(layers[3].label, "dog");
}

TEST(GenerateLayers, ThreeTermsWithDuplicate) {
  Terms q{"a", "b", "a", "c"};
  auto layers = generate_layers(q);
  ASSERT_EQ(layers.size(), 5u);
  EXPECT_EQ(layers[2].label, "a");
  EXPECT_EQ(layers[3].label, "b");
  EXPECT_EQ(layers[4].label, "c");
  std::set<std::string> labels, ids;
  for (const auto& l : layers) {
    labels.insert(l.label);
    ids.insert(l.layer_id);
  }
  EXPECT_EQ(labels.size(), layers.size());
  EXPECT_EQ(ids.size(), layers.size());
}

TEST(GenerateLayers, EmptyQuery) {
  Terms q;
  try {
    generate_layers(q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyQuery);
  }
}

TEST(RawScore, Examples) {
  auto d = vec({{"cat", 2.0}, {"dog", 0.5}});
  auto q = vec({{"cat", 1.0}, {"dog", 1.0}});
  LayerSpec conj{"q-and", LayerKind::kConjunction, "cat AND dog", {"cat", "dog"}};
  LayerSpec term{"q-term-1", LayerKind::kTerm, "cat", {"cat"}};
  LayerSpec all{"q-vector", LayerKind::kVector, "all", {"cat", "dog"}};
  EXPECT_DOUBLE_EQ(layer_raw_score(conj, d, q), 0.5);
  EXPECT_DOUBLE_EQ(layer_raw_score(term, d, q), 2.0);
  EXPECT_NEAR(layer_raw_score(all, d, q), 2.5 / (std::sqrt(4.25) * std::sqrt(2.0)),
              1e-12);
  EXPECT_EQ(layer_raw_score(conj, vec({{"cat", 3.0}}), q), 0.0);
  LayerSpec cluster{"c1", LayerKind::kCluster, "x", {}};
  EXPECT_THROW(layer_raw_score(cluster, d, q), Error);
}

TEST(Normalize, Examples) {
  auto b = normalize_brightness({{"a", 0.2}, {"b", 0.4}, {"c", 0.6}});
  EXPECT_NEAR(b["a"], 0.0, 1e-12);
  EXPECT_NEAR(b["b"], 0.5, 1e-12);
  EXPECT_NEAR(b["c"], 1.0, 1e-12);
  auto flat = normalize_brightness({{"a", 0.3}, {"b", 0.3}});
  EXPECT_EQ(flat["a"], 1.0);
  EXPECT_EQ(flat["b"], 1.0);
  EXPECT_THROW(normalize_brightness({}), Error);
}

TEST(Normalize, PreservesOrderAndIsScaleInvariant) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> x(0.0, 3.0);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 300; ++trial) {
    ScoreMap raw, scaled;
    double c = scale(rng);
    for (int i = 0; i < 2 + trial % 10; ++i) {
      double v = x(rng);
      raw["d" + std::to_string(i)] = v;
      scaled["d" + std::to_string(i)] = c * v;
    }
    auto b = normalize_brightness(raw);
    auto bs = normalize_brightness(scaled);
    double lo = 2, hi = -1;
    for (const auto& [id, v] : raw) {
      EXPECT_GE(b[id], 0.0);
      EXPECT_LE(b[id], 1.0);
      EXPECT_NEAR(b[id], bs[id], 1e-12);
      lo = std::min(lo, b[id]);
      hi = std::max(hi, b[id]);
      for (const auto& [id2, v2] : raw) {
        if (v < v2) EXPECT_LE(b[id], b[id2]);
      }
    }
    EXPECT_EQ(lo, 0.0);
    EXPECT_EQ(hi, 1.0);
  }
}

TEST(QueryLayers, ConjunctionNeverExceedsTermLayers) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto index = build_index(testing::random_corpus(rng, 8), AnalysisConfig{});
    Terms q{"w1", "w2", "w3"};
    auto qvec = index.query_vector(q);
    auto layers = generate_layers(q);
    auto conj = score_query_layer(layers[1], index, qvec);
    for (std::size_t t = 2; t < layers.size(); ++t) {
      auto term = score_query_layer(layers[t], index, qvec);
      for (const auto& [id, v] : conj.raw) EXPECT_LE(v, term.raw.at(id));
    }
  }
}

TEST(QueryLayers, SingleTermOrdersLikeVectorLayer) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    auto index = build_index(testing::random_corpus(rng, 10), AnalysisConfig{});
    Terms q{"w" + std::to_string(trial % 12)};
    auto qvec = index.query_vector(q);
    auto layers = generate_layers(q);
    auto all = score_query_layer(layers[0], index, qvec);
    auto term = score_query_layer(layers[1], index, qvec);
    for (const auto& [a, va] : all.raw) {
      for (const auto& [b, vb] : all.raw) {
        if (term.raw.at(a) < term.raw.at(b) - 1e-12) {
          EXPECT_LE(va, vb + 1e-12);
        }
        EXPECT_NEAR(va, term.raw.at(a), 1e-12);
      }
    }
  }
}

TEST(QueryLayers, ScoresCoverTheIndex) {
  auto index = build_index({doc("a", "cat dog"), doc("b", "dog"),
                            doc("c", "bird")},
                           AnalysisConfig{});
  Terms q{"cat"};
  auto qvec = index.query_vector(q);
  auto s = score_query_layer(generate_layers(q)[1], index, qvec);
  EXPECT_EQ(s.raw.size(), 3u);
  EXPECT_EQ(s.brightness.at("a"), 1.0);
  EXPECT_EQ(s.brightness.at("b"), 0.0);
}

}  // namespace
}  // namespace docmap
