#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "docmap/index.hpp"
#include "docmap/layers.hpp"

namespace docmap {

struct ClusterConfig {
  std::size_t max_phrase_len = 6;   // cluster.max_phrase_len
  std::size_t top_bases = 30;       // cluster.top_bases
  double merge_threshold = 0.5;     // cluster.merge_threshold
  std::size_t tabs = 5;             // cluster.tabs

  // Throws Error(kInvalidArgument) if any parameter is out of range.
  void validate() const;
};

using Phrase = std::vector<std::string>;

// Documents sharing one phrase of analyzed (stopword-free) terms.
struct BaseCluster {
  Phrase phrase;
  std::set<std::string> members;
  double score = 0.0;

  friend bool operator==(const BaseCluster&, const BaseCluster&) = default;
};

struct ClusterLabel {
  std::string first;
  std::optional<std::string> second;

  std::string text() const;
  friend bool operator==(const ClusterLabel&, const ClusterLabel&) = default;
};

struct Cluster {
  std::string cluster_id;
  std::set<std::string> members;
  std::vector<BaseCluster> bases;  // strongest first
  double score = 0.0;              // sum of base scores
  ClusterLabel label;
};

// members * f(len) with f(1) = 0.5 and f(len) = min(len, 6) otherwise.
double score_base_cluster(std::size_t members, std::size_t phrase_len);

// One base cluster per phrase of at most max_phrase_len terms that occurs in
// two or more documents and that no one-term extension (left or right)
// shares with exactly the same documents. Result is sorted strongest first,
// ties by phrase. Throws Error(kTooFewDocuments) for fewer than 2 documents
// and Error(kDuplicateId) on repeated ids.
std::vector<BaseCluster> build_base_clusters(std::span<const Document> docs,
                                             const AnalysisConfig& analysis,
                                             const ClusterConfig& config);

// Keeps the top_bases strongest bases, links two bases when their overlap
// exceeds `overlap_threshold` relative to each of them, and returns the
// connected components ordered by summed score. Ids are c1, c2, ...; labels
// are left empty. The result does not depend on the order of `bases`.
std::vector<Cluster> merge_base_clusters(std::vector<BaseCluster> bases,
                                         double overlap_threshold,
                                         std::size_t top_bases = 30);

// The two distinct words of the cluster's phrases with the highest summed
// tf-idf over the members, ties lexicographic.
ClusterLabel label_cluster(const Cluster& cluster, const InvertedIndex& index);

// Centroid cosine of every indexed document against the cluster members,
// normalized to brightness over the whole index. Throws
// Error(kInvalidArgument) for an empty cluster.
LayerScores membership_scores(const Cluster& cluster,
                              const InvertedIndex& index);

// Bases, merge, truncation to config.tabs and labels over the documents of
// `index`. Returns no clusters when fewer than two documents are indexed.
std::vector<Cluster> cluster_documents(const InvertedIndex& index,
                                       const ClusterConfig& config);

}  // namespace docmap
