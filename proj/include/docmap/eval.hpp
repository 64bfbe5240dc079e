#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace docmap::eval {

// (query_id, doc_id) -> 0/1 judgments.
class QrelSet {
 public:
  void add(const std::string& query_id, const std::string& doc_id, int rel);

  bool has_query(std::string_view query_id) const;
  // Relevant documents of a query (empty if unjudged).
  const std::set<std::string>& relevant(std::string_view query_id) const;
  std::vector<std::string> queries() const;

 private:
  std::map<std::string, std::map<std::string, int>, std::less<>> judgments_;
  std::map<std::string, std::set<std::string>, std::less<>> relevant_;
};

// query_id -> ranking, rank 1 first.
using Run = std::map<std::string, std::vector<std::string>>;

// `query_id doc_id rel` lines. Throws Error(kInvalidArgument) naming the
// line on malformed input.
QrelSet parse_qrels(std::string_view content);
QrelSet load_qrels(const std::string& path);

// `query_id rank doc_id score` lines; entries are ordered by rank. Duplicate
// documents or ranks within a query are rejected.
Run parse_run(std::string_view content);
Run load_run(const std::string& path);

using ElevenPoint = std::array<double, 11>;

// Relevant documents among the first min(k, n), divided by k.
double precision_at_cutoff(std::span<const std::string> ranking,
                           const std::set<std::string>& relevant,
                           std::size_t k);

// Interpolated precision at recall 0.0, 0.1, ..., 1.0. Recall is measured
// against every judged-relevant document, retrieved or not; levels the
// ranking never reaches get 0. Throws Error(kUndefinedQuery) if `relevant`
// is empty.
ElevenPoint interpolated_precision_11pt(std::span<const std::string> ranking,
                                        const std::set<std::string>& relevant);

// Rank-sum normalized recall over the ranking as its own universe:
// 1 - (sum of relevant ranks - sum_{i<=R} i) / (R (N - R)), where R counts
// relevant documents in the ranking and N is its length. Throws
// Error(kUndefinedQuery) when R == 0 or R == N.
double normalized_recall(std::span<const std::string> ranking,
                         const std::set<std::string>& relevant);

// round(100 (b - a) / a), halves away from zero; nullopt when a == 0.
std::optional<long> percent_increase(double a, double b);
std::optional<double> percent_increase_exact(double a, double b);

// Rounds half away from zero to `places` decimals.
double round_to(double value, int places);

// Per-run means over the evaluated queries.
struct RunSummary {
  ElevenPoint interpolated{};
  std::vector<double> precision_at;  // aligned with the report cutoffs
  std::optional<double> normalized_recall;
  std::size_t queries = 0;
};

struct LevelRow {
  double recall_level = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> increase;  // unrounded percent
};

struct CutoffRow {
  std::size_t cutoff = 0;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> increase;
};

struct ComparisonReport {
  std::vector<LevelRow> levels;
  double average_a = 0.0;
  double average_b = 0.0;
  std::optional<double> average_increase;  // mean of per-level increases
  std::vector<CutoffRow> cutoffs;
  std::optional<double> nrecall_a;
  std::optional<double> nrecall_b;
  std::optional<double> nrecall_increase;
  std::size_t queries = 0;
  std::vector<std::string> warnings;

  // Aligned text table; precision to 4 decimals, percents as integers.
  std::string to_text() const;
  // Same numbers, same rounding.
  nlohmann::json to_json() const;
};

// Builds the report from already averaged per-run values.
ComparisonReport compare_summaries(const RunSummary& a, const RunSummary& b,
                                   std::span<const std::size_t> cutoffs);

// Averages each run over the queries both runs share with judged-relevant
// documents, then compares. Skipped queries are listed in `warnings`.
ComparisonReport comparison_report(const Run& run_a, const Run& run_b,
                                   const QrelSet& qrels,
                                   std::span<const std::size_t> cutoffs);

inline constexpr std::array<std::size_t, 4> kDefaultCutoffs = {5, 10, 20, 30};

}  // namespace docmap::eval
