#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "docmap/text.hpp"

namespace docmap {

struct Document {
  std::string id;
  std::string title;
  std::string body;

  friend bool operator==(const Document&, const Document&) = default;
};

// Sparse tf-idf vector. Ordered so that sums over entries are reproducible.
class TermVector {
 public:
  using Map = std::map<std::string, double, std::less<>>;

  TermVector() = default;

  // Zero weights are dropped; negative or non-finite weights throw
  // Error(kInvalidArgument).
  void set(const std::string& term, double weight);
  double get(std::string_view term) const;

  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  double norm() const;

  friend bool operator==(const TermVector&, const TermVector&) = default;

 private:
  Map entries_;
};

// (1 + ln tf) * ln(N / df), zero when tf == 0 or df == N. A term with
// df == 0 carries no corpus evidence and also weighs 0.
double term_weight(std::size_t tf, std::size_t df, std::size_t doc_count);

// Cosine of the angle between u and v; 0 if either is empty.
double cosine_sim(const TermVector& u, const TermVector& v);

struct Posting {
  std::string doc_id;
  std::size_t tf = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct RankedEntry {
  Document doc;
  double score = 0.0;
  std::size_t original_rank = 0;  // 1-based
};

struct RankedResult {
  std::string query_id;
  std::vector<RankedEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

// Immutable after construction; safe to share across threads.
class InvertedIndex {
 public:
  // Indexes title + body of each document. Throws Error(kDuplicateId) naming
  // the offending id.
  InvertedIndex(std::vector<Document> corpus, AnalysisConfig config);

  std::size_t doc_count() const { return docs_.size(); }
  std::size_t df(std::string_view term) const;
  const std::vector<Posting>& postings(std::string_view term) const;
  const std::map<std::string, std::vector<Posting>, std::less<>>& all_postings()
      const {
    return postings_;
  }

  const TermVector& doc_vector(std::string_view doc_id) const;
  const Document& document(std::string_view doc_id) const;
  bool contains(std::string_view doc_id) const;
  const std::vector<Document>& documents() const { return docs_; }
  const AnalysisConfig& analysis() const { return config_; }

  // tf-idf vector for an already tokenized query, weighted against this
  // index. Terms absent from the index are dropped.
  TermVector query_vector(std::span<const std::string> terms) const;

 private:
  std::size_t slot(std::string_view doc_id) const;

  AnalysisConfig config_;
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> slot_of_;
  std::map<std::string, std::vector<Posting>, std::less<>> postings_;
  std::vector<TermVector> vectors_;
};

// Same as constructing an InvertedIndex; kept as the pipeline entry point.
InvertedIndex build_index(std::vector<Document> corpus,
                          const AnalysisConfig& config);

// Documents with positive cosine against the query, best first, ties by
// ascending id, truncated to k. Throws Error(kInvalidArgument) if k == 0.
RankedResult local_search(const InvertedIndex& index,
                          std::span<const std::string> query_terms,
                          std::size_t k);

// One JSON object per line with exactly `id`, `title`, `body`.
std::vector<Document> load_corpus(const std::string& path);

}  // namespace docmap
