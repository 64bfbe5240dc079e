#include "docmap/index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

#include "docmap/error.hpp"

namespace docmap {

void TermVector::set(const std::string& term, double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw Error(ErrorCode::kInvalidArgument,
                "term weight for '" + term + "' must be finite and >= 0");
  }
  if (weight == 0.0) {
    entries_.erase(term);
  } else {
    entries_[term] = weight;
  }
}

double TermVector::get(std::string_view term) const {
  auto it = entries_.find(term);
  return it == entries_.end() ? 0.0 : it->second;
}

double TermVector::norm() const {
  double sum = 0.0;
  for (const auto& [term, w] : entries_) sum += w * w;
  return std::sqrt(sum);
}

double term_weight(std::size_t tf, std::size_t df, std::size_t doc_count) {
  if (doc_count == 0) {
    throw Error(ErrorCode::kInvalidArgument, "term_weight: N must be >= 1");
  }
  if (df > doc_count) {
    throw Error(ErrorCode::kInvalidArgument, "term_weight: df exceeds N");
  }
  if (tf == 0 || df == 0 || df == doc_count) return 0.0;
  return (1.0 + std::log(static_cast<double>(tf))) *
         std::log(static_cast<double>(doc_count) / static_cast<double>(df));
}

double cosine_sim(const TermVector& u, const TermVector& v) {
  if (u.empty() || v.empty()) return 0.0;
  // Merge walk over the two ordered maps.
  double dot = 0.0;
  auto a = u.entries().begin();
  auto b = v.entries().begin();
  while (a != u.entries().end() && b != v.entries().end()) {
    int c = a->first.compare(b->first);
    if (c < 0) {
      ++a;
    } else if (c > 0) {
      ++b;
    } else {
      dot += a->second * b->second;
      ++a;
      ++b;
    }
  }
  if (dot == 0.0) return 0.0;
  double sim = dot / (u.norm() * v.norm());
  return std::clamp(sim, 0.0, 1.0);
}

InvertedIndex::InvertedIndex(std::vector<Document> corpus,
                             AnalysisConfig config)
    : config_(std::move(config)), docs_(std::move(corpus)) {
  std::vector<std::map<std::string, std::size_t>> counts(docs_.size());
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    const Document& d = docs_[i];
    if (d.id.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "document id must be non-empty");
    }
    if (!slot_of_.emplace(d.id, i).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate document id: " + d.id);
    }
    for (auto& term : tokenize(d.title + " " + d.body, config_)) {
      ++counts[i][term];
    }
  }
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    for (const auto& [term, tf] : counts[i]) {
      postings_[term].push_back({docs_[i].id, tf});
    }
  }
  vectors_.resize(docs_.size());
  const std::size_t n = docs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [term, tf] : counts[i]) {
      vectors_[i].set(term, term_weight(tf, postings_[term].size(), n));
    }
  }
}

std::size_t InvertedIndex::slot(std::string_view doc_id) const {
  auto it = slot_of_.find(std::string(doc_id));
  if (it == slot_of_.end()) {
    throw Error(ErrorCode::kNoSuchDocument,
                "no document with id " + std::string(doc_id));
  }
  return it->second;
}

std::size_t InvertedIndex::df(std::string_view term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? 0 : it->second.size();
}

const std::vector<Posting>& InvertedIndex::postings(
    std::string_view term) const {
  static const std::vector<Posting> kEmpty;
  auto it = postings_.find(term);
  return it == postings_.end() ? kEmpty : it->second;
}

const TermVector& InvertedIndex::doc_vector(std::string_view doc_id) const {
  return vectors_[slot(doc_id)];
}

const Document& InvertedIndex::document(std::string_view doc_id) const {
  return docs_[slot(doc_id)];
}

bool InvertedIndex::contains(std::string_view doc_id) const {
  return slot_of_.contains(std::string(doc_id));
}

TermVector InvertedIndex::query_vector(
    std::span<const std::string> terms) const {
  std::map<std::string, std::size_t> tf;
  for (const auto& t : terms) ++tf[t];
  TermVector v;
  for (const auto& [term, count] : tf) {
    v.set(term, term_weight(count, df(term), doc_count()));
  }
  return v;
}

InvertedIndex build_index(std::vector<Document> corpus,
                          const AnalysisConfig& config) {
  return InvertedIndex(std::move(corpus), config);
}

RankedResult local_search(const InvertedIndex& index,
                          std::span<const std::string> query_terms,
                          std::size_t k) {
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "local_search: k must be >= 1");
  }
  RankedResult result;
  if (index.doc_count() == 0) return result;
  TermVector query = index.query_vector(query_terms);

  std::map<std::string, bool> candidates;
  for (const auto& [term, w] : query.entries()) {
    for (const auto& p : index.postings(term)) candidates[p.doc_id] = true;
  }
  std::vector<std::pair<double, const Document*>> scored;
  for (const auto& [id, unused] : candidates) {
    double s = cosine_sim(query, index.doc_vector(id));
    if (s > 0.0) scored.emplace_back(s, &index.document(id));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second->id < b.second->id;
  });
  if (scored.size() > k) scored.resize(k);
  result.entries.reserve(scored.size());
  for (std::size_t i = 0; i < scored.size(); ++i) {
    result.entries.push_back({*scored[i].second, scored[i].first, i + 1});
  }
  return result;
}

std::vector<Document> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read corpus file " + path);
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto where = path + ":" + std::to_string(lineno);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kInvalidArgument,
                  where + ": malformed JSON: " + e.what());
    }
    if (!j.is_object() || j.size() != 3 || !j.contains("id") ||
        !j.contains("title") || !j.contains("body") ||
        !j["id"].is_string() || !j["title"].is_string() ||
        !j["body"].is_string()) {
      throw Error(ErrorCode::kInvalidArgument,
                  where + ": expected exactly string fields id, title, body");
    }
    Document d{j["id"].get<std::string>(), j["title"].get<std::string>(),
               j["body"].get<std::string>()};
    if (d.id.empty() || d.title.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  where + ": id and title must be non-empty");
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

}  // namespace docmap
