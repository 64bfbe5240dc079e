#include "docmap/clustering.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "docmap/error.hpp"

namespace docmap {

namespace {

// Generalized suffix trie truncated at max_phrase_len terms. Every node is a
// phrase; `docs` lists the documents containing it in ascending slot order.
class PhraseTrie {
 public:
  struct Node {
    std::map<std::string, std::size_t, std::less<>> children;
    std::vector<std::size_t> docs;
    std::size_t parent = 0;
    std::string term;
    std::size_t depth = 0;
  };

  PhraseTrie() : nodes_(1) {}

  void insert(std::span<const std::string> terms, std::size_t doc,
              std::size_t max_len) {
    for (std::size_t start = 0; start < terms.size(); ++start) {
      std::size_t cur = 0;
      std::size_t stop = std::min(terms.size(), start + max_len);
      for (std::size_t i = start; i < stop; ++i) {
        cur = child(cur, terms[i]);
        auto& docs = nodes_[cur].docs;
        if (docs.empty() || docs.back() != doc) docs.push_back(doc);
      }
    }
  }

  std::optional<std::size_t> find(std::span<const std::string> phrase) const {
    std::size_t cur = 0;
    for (const auto& t : phrase) {
      auto it = nodes_[cur].children.find(t);
      if (it == nodes_[cur].children.end()) return std::nullopt;
      cur = it->second;
    }
    return cur;
  }

  Phrase phrase(std::size_t node) const {
    Phrase p(nodes_[node].depth);
    for (std::size_t n = node; n != 0; n = nodes_[n].parent) {
      p[nodes_[n].depth - 1] = nodes_[n].term;
    }
    return p;
  }

  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::size_t child(std::size_t parent, const std::string& term) {
    auto it = nodes_[parent].children.find(term);
    if (it != nodes_[parent].children.end()) return it->second;
    std::size_t id = nodes_.size();
    Node n;
    n.parent = parent;
    n.term = term;
    n.depth = nodes_[parent].depth + 1;
    nodes_.push_back(std::move(n));
    nodes_[parent].children.emplace(term, id);
    return id;
  }

  std::vector<Node> nodes_;
};

bool stronger(const BaseCluster& a, const BaseCluster& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.phrase != b.phrase) return a.phrase < b.phrase;
  return a.members < b.members;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // The smaller index becomes the root, so roots are component minima.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

void ClusterConfig::validate() const {
  if (max_phrase_len < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "cluster.max_phrase_len must be >= 1");
  }
  if (top_bases < 1) {
    throw Error(ErrorCode::kInvalidArgument, "cluster.top_bases must be >= 1");
  }
  if (!(merge_threshold > 0.0 && merge_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "cluster.merge_threshold must lie in (0, 1]");
  }
}

std::string ClusterLabel::text() const {
  return second ? first + " " + *second : first;
}

double score_base_cluster(std::size_t members, std::size_t phrase_len) {
  double f = phrase_len <= 1 ? 0.5
                             : static_cast<double>(std::min<std::size_t>(
                                   phrase_len, 6));
  return static_cast<double>(members) * f;
}

std::vector<BaseCluster> build_base_clusters(std::span<const Document> docs,
                                             const AnalysisConfig& analysis,
                                             const ClusterConfig& config) {
  config.validate();
  if (docs.size() < 2) {
    throw Error(ErrorCode::kTooFewDocuments,
                "clustering needs at least 2 documents, got " +
                    std::to_string(docs.size()));
  }
  std::unordered_set<std::string> ids;
  PhraseTrie trie;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!ids.insert(docs[i].id).second) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate document id: " + docs[i].id);
    }
    auto terms = tokenize(docs[i].title + " " + docs[i].body, analysis);
    trie.insert(terms, i, config.max_phrase_len);
  }

  const auto& nodes = trie.nodes();
  std::vector<bool> maximal(nodes.size(), true);
  for (std::size_t n = 1; n < nodes.size(); ++n) {
    if (nodes[n].docs.size() < 2 || nodes[n].depth < 2) continue;
    // n extends its parent on the right; check the parent and the phrase
    // that n extends on the left.
    if (nodes[nodes[n].parent].docs == nodes[n].docs) {
      maximal[nodes[n].parent] = false;
    }
    Phrase p = trie.phrase(n);
    auto suffix = trie.find(std::span<const std::string>(p).subspan(1));
    if (suffix && nodes[*suffix].docs == nodes[n].docs) {
      maximal[*suffix] = false;
    }
  }

  std::vector<BaseCluster> bases;
  for (std::size_t n = 1; n < nodes.size(); ++n) {
    if (nodes[n].docs.size() < 2 || !maximal[n]) continue;
    BaseCluster b;
    b.phrase = trie.phrase(n);
    for (auto d : nodes[n].docs) b.members.insert(docs[d].id);
    b.score = score_base_cluster(b.members.size(), b.phrase.size());
    bases.push_back(std::move(b));
  }
  std::sort(bases.begin(), bases.end(), stronger);
  return bases;
}

std::vector<Cluster> merge_base_clusters(std::vector<BaseCluster> bases,
                                         double overlap_threshold,
                                         std::size_t top_bases) {
  if (!(overlap_threshold > 0.0 && overlap_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "merge threshold must lie in (0, 1]");
  }
  std::sort(bases.begin(), bases.end(), stronger);
  if (bases.size() > top_bases) bases.resize(top_bases);

  DisjointSets sets(bases.size());
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      const auto& a = bases[i].members;
      const auto& b = bases[j].members;
      if (a.empty() || b.empty()) continue;
      std::size_t common = 0;
      for (const auto& m : a) common += b.contains(m);
      double ca = static_cast<double>(common) / static_cast<double>(a.size());
      double cb = static_cast<double>(common) / static_cast<double>(b.size());
      if (ca > overlap_threshold && cb > overlap_threshold) sets.unite(i, j);
    }
  }

  // Component root = its strongest base, so iterating in base order visits
  // components by first appearance.
  std::map<std::size_t, Cluster> by_root;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    Cluster& c = by_root[sets.find(i)];
    c.members.insert(bases[i].members.begin(), bases[i].members.end());
    c.score += bases[i].score;
    c.bases.push_back(std::move(bases[i]));
  }
  std::vector<std::pair<std::size_t, Cluster>> ordered(
      std::make_move_iterator(by_root.begin()),
      std::make_move_iterator(by_root.end()));
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second.score != b.second.score) {
                       return a.second.score > b.second.score;
                     }
                     return a.first < b.first;
                   });
  std::vector<Cluster> clusters;
  clusters.reserve(ordered.size());
  for (auto& [root, c] : ordered) {
    c.cluster_id = "c" + std::to_string(clusters.size() + 1);
    clusters.push_back(std::move(c));
  }
  return clusters;
}

ClusterLabel label_cluster(const Cluster& cluster, const InvertedIndex& index) {
  std::map<std::string, double> weight;
  for (const auto& b : cluster.bases) {
    for (const auto& t : b.phrase) weight.emplace(t, 0.0);
  }
  for (auto& [term, w] : weight) {
    for (const auto& m : cluster.members) {
      if (index.contains(m)) w += index.doc_vector(m).get(term);
    }
  }
  std::vector<std::pair<std::string, double>> ranked(weight.begin(),
                                                     weight.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  ClusterLabel label;
  if (ranked.empty()) return label;
  label.first = ranked[0].first;
  if (ranked.size() > 1) label.second = ranked[1].first;
  return label;
}

LayerScores membership_scores(const Cluster& cluster,
                              const InvertedIndex& index) {
  if (cluster.members.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "membership_scores: cluster " + cluster.cluster_id +
                    " has no members");
  }
  std::map<std::string, double> sum;
  for (const auto& m : cluster.members) {
    for (const auto& [term, w] : index.doc_vector(m).entries()) sum[term] += w;
  }
  TermVector centroid;
  const auto n = static_cast<double>(cluster.members.size());
  for (const auto& [term, w] : sum) centroid.set(term, w / n);

  LayerScores scores;
  for (const auto& d : index.documents()) {
    scores.raw.emplace(d.id, cosine_sim(index.doc_vector(d.id), centroid));
  }
  scores.brightness = normalize_brightness(scores.raw);
  return scores;
}

std::vector<Cluster> cluster_documents(const InvertedIndex& index,
                                       const ClusterConfig& config) {
  config.validate();
  if (index.doc_count() < 2) return {};
  auto bases =
      build_base_clusters(index.documents(), index.analysis(), config);
  auto clusters = merge_base_clusters(std::move(bases), config.merge_threshold,
                                      config.top_bases);
  if (clusters.size() > config.tabs) clusters.resize(config.tabs);
  for (auto& c : clusters) c.label = label_cluster(c, index);
  return clusters;
}

}  // namespace docmap
