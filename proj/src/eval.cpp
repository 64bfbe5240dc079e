#include "docmap/eval.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "docmap/error.hpp"

namespace docmap::eval {

namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    ++lineno;
    auto f = fields(content.substr(pos, end - pos));
    pos = end + 1;
    if (!f.empty()) fn(lineno, f);
  }
}

Error line_error(std::size_t lineno, const std::string& why) {
  return Error(ErrorCode::kInvalidArgument,
               "line " + std::to_string(lineno) + ": " + why);
}

long long parse_int(std::string_view s, std::size_t lineno,
                    const char* what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw line_error(lineno, std::string("bad ") + what + " '" +
                                 std::string(s) + "'");
  }
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

void QrelSet::add(const std::string& query_id, const std::string& doc_id,
                  int rel) {
  if (rel != 0 && rel != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "relevance must be 0 or 1, got " + std::to_string(rel));
  }
  auto [it, inserted] = judgments_[query_id].emplace(doc_id, rel);
  if (!inserted && it->second != rel) {
    throw Error(ErrorCode::kInvalidArgument,
                "conflicting judgments for " + query_id + " " + doc_id);
  }
  auto& rel_set = relevant_[query_id];
  if (rel == 1) rel_set.insert(doc_id);
}

bool QrelSet::has_query(std::string_view query_id) const {
  return judgments_.find(query_id) != judgments_.end();
}

const std::set<std::string>& QrelSet::relevant(
    std::string_view query_id) const {
  static const std::set<std::string> kNone;
  auto it = relevant_.find(query_id);
  return it == relevant_.end() ? kNone : it->second;
}

std::vector<std::string> QrelSet::queries() const {
  std::vector<std::string> out;
  for (const auto& [q, unused] : judgments_) out.push_back(q);
  return out;
}

QrelSet parse_qrels(std::string_view content) {
  QrelSet qrels;
  for_each_line(content, [&](std::size_t lineno, const auto& f) {
    if (f.size() != 3) {
      throw line_error(lineno, "expected `query_id doc_id rel`");
    }
    auto rel = parse_int(f[2], lineno, "relevance");
    if (rel != 0 && rel != 1) throw line_error(lineno, "relevance must be 0/1");
    qrels.add(std::string(f[0]), std::string(f[1]), static_cast<int>(rel));
  });
  return qrels;
}

QrelSet load_qrels(const std::string& path) { return parse_qrels(slurp(path)); }

Run parse_run(std::string_view content) {
  std::map<std::string, std::map<long long, std::string>> ranked;
  std::map<std::string, std::set<std::string>> seen;
  for_each_line(content, [&](std::size_t lineno, const auto& f) {
    if (f.size() != 4) {
      throw line_error(lineno, "expected `query_id rank doc_id score`");
    }
    std::string q(f[0]);
    auto rank = parse_int(f[1], lineno, "rank");
    if (rank < 1) throw line_error(lineno, "rank must be >= 1");
    std::string doc(f[2]);
    double score = 0.0;
    auto [ptr, ec] = std::from_chars(f[3].data(), f[3].data() + f[3].size(),
                                     score);
    if (ec != std::errc() || ptr != f[3].data() + f[3].size()) {
      throw line_error(lineno, "bad score '" + std::string(f[3]) + "'");
    }
    if (!seen[q].insert(doc).second) {
      throw line_error(lineno, "document " + doc + " repeated for " + q);
    }
    if (!ranked[q].emplace(rank, doc).second) {
      throw line_error(lineno, "rank repeated for " + q);
    }
  });
  Run run;
  for (auto& [q, by_rank] : ranked) {
    auto& list = run[q];
    for (auto& [rank, doc] : by_rank) list.push_back(std::move(doc));
  }
  return run;
}

Run load_run(const std::string& path) { return parse_run(slurp(path)); }

double precision_at_cutoff(std::span<const std::string> ranking,
                           const std::set<std::string>& relevant,
                           std::size_t k) {
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "precision cutoff must be >= 1");
  }
  std::size_t hits = 0;
  const std::size_t n = std::min(k, ranking.size());
  for (std::size_t i = 0; i < n; ++i) hits += relevant.contains(ranking[i]);
  return static_cast<double>(hits) / static_cast<double>(k);
}

ElevenPoint interpolated_precision_11pt(std::span<const std::string> ranking,
                                        const std::set<std::string>& relevant) {
  if (relevant.empty()) {
    throw Error(ErrorCode::kUndefinedQuery,
                "interpolated precision needs at least one relevant document");
  }
  const std::size_t total = relevant.size();
  // best[h] = best precision at any rank having at least h relevant hits.
  std::vector<double> best(total + 2, 0.0);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    hits += relevant.contains(ranking[i]);
    double p = static_cast<double>(hits) / static_cast<double>(i + 1);
    auto& slot = best[std::min(hits, total)];
    slot = std::max(slot, p);
  }
  for (std::size_t h = total; h-- > 0;) best[h] = std::max(best[h], best[h + 1]);

  ElevenPoint out{};
  for (std::size_t level = 0; level <= 10; ++level) {
    // Fewest hits h with h / total >= level / 10.
    std::size_t need = (level * total + 9) / 10;
    out[level] = need <= total ? best[need] : 0.0;
  }
  return out;
}

double normalized_recall(std::span<const std::string> ranking,
                         const std::set<std::string>& relevant) {
  const std::size_t n = ranking.size();
  std::size_t r = 0;
  std::size_t rank_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (relevant.contains(ranking[i])) {
      ++r;
      rank_sum += i + 1;
    }
  }
  if (r == 0 || r == n) {
    throw Error(ErrorCode::kUndefinedQuery,
                "normalized recall needs 0 < R < N (R=" + std::to_string(r) +
                    ", N=" + std::to_string(n) + ")");
  }
  const std::size_t ideal = r * (r + 1) / 2;
  return 1.0 - static_cast<double>(rank_sum - ideal) /
                   (static_cast<double>(r) * static_cast<double>(n - r));
}

std::optional<double> percent_increase_exact(double a, double b) {
  if (a == 0.0) return std::nullopt;
  return 100.0 * (b - a) / a;
}

std::optional<long> percent_increase(double a, double b) {
  auto p = percent_increase_exact(a, b);
  if (!p) return std::nullopt;
  return std::lround(*p);
}

double round_to(double value, int places) {
  double scale = std::pow(10.0, places);
  return std::round(value * scale) / scale;
}

ComparisonReport compare_summaries(const RunSummary& a, const RunSummary& b,
                                   std::span<const std::size_t> cutoffs) {
  ComparisonReport report;
  report.queries = std::min(a.queries, b.queries);
  std::vector<double> col_a, col_b, increases;
  for (std::size_t level = 0; level <= 10; ++level) {
    LevelRow row{static_cast<double>(level) / 10.0, a.interpolated[level],
                 b.interpolated[level],
                 percent_increase_exact(a.interpolated[level],
                                        b.interpolated[level])};
    col_a.push_back(row.a);
    col_b.push_back(row.b);
    if (row.increase) increases.push_back(*row.increase);
    report.levels.push_back(row);
  }
  report.average_a = mean(col_a);
  report.average_b = mean(col_b);
  if (!increases.empty()) report.average_increase = mean(increases);

  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    double pa = i < a.precision_at.size() ? a.precision_at[i] : 0.0;
    double pb = i < b.precision_at.size() ? b.precision_at[i] : 0.0;
    report.cutoffs.push_back(
        {cutoffs[i], pa, pb, percent_increase_exact(pa, pb)});
  }
  report.nrecall_a = a.normalized_recall;
  report.nrecall_b = b.normalized_recall;
  if (a.normalized_recall && b.normalized_recall) {
    report.nrecall_increase =
        percent_increase_exact(*a.normalized_recall, *b.normalized_recall);
  }
  return report;
}

ComparisonReport comparison_report(const Run& run_a, const Run& run_b,
                                   const QrelSet& qrels,
                                   std::span<const std::size_t> cutoffs) {
  for (auto k : cutoffs) {
    if (k == 0) {
      throw Error(ErrorCode::kInvalidArgument, "cutoffs must be >= 1");
    }
  }
  std::vector<std::string> warnings;
  for (const auto& [q, unused] : run_a) {
    if (!run_b.contains(q)) warnings.push_back("query " + q + " only in run A");
  }
  for (const auto& [q, unused] : run_b) {
    if (!run_a.contains(q)) warnings.push_back("query " + q + " only in run B");
  }

  struct Acc {
    std::vector<ElevenPoint> curves;
    std::vector<std::vector<double>> at_k;
    std::vector<double> nrecall;
  };
  Acc acc_a, acc_b;
  std::size_t evaluated = 0;
  for (const auto& [q, list_a] : run_a) {
    auto it = run_b.find(q);
    if (it == run_b.end()) continue;
    if (!qrels.has_query(q)) {
      warnings.push_back("query " + q + " has no judgments; skipped");
      continue;
    }
    const auto& rel = qrels.relevant(q);
    if (rel.empty()) {
      warnings.push_back("query " + q + " has no relevant documents; skipped");
      continue;
    }
    ++evaluated;
    auto add = [&](Acc& acc, const std::vector<std::string>& list,
                   const char* name) {
      acc.curves.push_back(interpolated_precision_11pt(list, rel));
      std::vector<double> pk;
      for (auto k : cutoffs) pk.push_back(precision_at_cutoff(list, rel, k));
      acc.at_k.push_back(std::move(pk));
      try {
        acc.nrecall.push_back(normalized_recall(list, rel));
      } catch (const Error& e) {
        warnings.push_back(std::string("run ") + name + " query " + q +
                           ": normalized recall skipped (" + e.what() + ")");
      }
    };
    add(acc_a, list_a, "A");
    add(acc_b, it->second, "B");
  }

  auto summarize = [&](const Acc& acc) {
    RunSummary s;
    s.queries = acc.curves.size();
    for (std::size_t level = 0; level <= 10; ++level) {
      std::vector<double> xs;
      for (const auto& c : acc.curves) xs.push_back(c[level]);
      s.interpolated[level] = mean(xs);
    }
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
      std::vector<double> xs;
      for (const auto& pk : acc.at_k) xs.push_back(pk[i]);
      s.precision_at.push_back(mean(xs));
    }
    if (!acc.nrecall.empty()) s.normalized_recall = mean(acc.nrecall);
    return s;
  };
  ComparisonReport report =
      compare_summaries(summarize(acc_a), summarize(acc_b), cutoffs);
  report.queries = evaluated;
  report.warnings = std::move(warnings);
  return report;
}

namespace {

std::string fixed4(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << round_to(v, 4);
  return os.str();
}

std::string pct(const std::optional<double>& p) {
  return p ? std::to_string(std::lround(*p)) : std::string("n/a");
}

nlohmann::json pct_json(const std::optional<double>& p) {
  return p ? nlohmann::json(std::lround(*p)) : nlohmann::json(nullptr);
}

nlohmann::json opt4(const std::optional<double>& v) {
  return v ? nlohmann::json(round_to(*v, 4)) : nlohmann::json(nullptr);
}

}  // namespace

std::string ComparisonReport::to_text() const {
  std::ostringstream os;
  auto row = [&](const std::string& label, const std::string& a,
                 const std::string& b, const std::string& inc) {
    os << std::left << std::setw(18) << label << std::right << std::setw(10)
       << a << std::setw(10) << b << std::setw(12) << inc << '\n';
  };
  os << "Queries evaluated: " << queries << "\n\n";
  row("Recall Level", "Run A", "Run B", "% Increase");
  for (const auto& l : levels) {
    std::ostringstream level;
    level << std::fixed << std::setprecision(1) << l.recall_level;
    row(level.str(), fixed4(l.a), fixed4(l.b), pct(l.increase));
  }
  row("Average", fixed4(average_a), fixed4(average_b), pct(average_increase));
  os << '\n';
  row("Cutoff", "Run A", "Run B", "% Increase");
  for (const auto& c : cutoffs) {
    row("P@" + std::to_string(c.cutoff), fixed4(c.a), fixed4(c.b),
        pct(c.increase));
  }
  os << '\n';
  row("Normalized recall", nrecall_a ? fixed4(*nrecall_a) : "n/a",
      nrecall_b ? fixed4(*nrecall_b) : "n/a", pct(nrecall_increase));
  return os.str();
}

nlohmann::json ComparisonReport::to_json() const {
  nlohmann::json j;
  j["queries"] = queries;
  auto& lv = j["levels"] = nlohmann::json::array();
  for (const auto& l : levels) {
    lv.push_back({{"recall", round_to(l.recall_level, 1)},
                  {"a", round_to(l.a, 4)},
                  {"b", round_to(l.b, 4)},
                  {"increase", pct_json(l.increase)}});
  }
  j["average"] = {{"a", round_to(average_a, 4)},
                  {"b", round_to(average_b, 4)},
                  {"increase", pct_json(average_increase)}};
  auto& ck = j["cutoffs"] = nlohmann::json::array();
  for (const auto& c : cutoffs) {
    ck.push_back({{"k", c.cutoff},
                  {"a", round_to(c.a, 4)},
                  {"b", round_to(c.b, 4)},
                  {"increase", pct_json(c.increase)}});
  }
  j["normalized_recall"] = {{"a", opt4(nrecall_a)},
                            {"b", opt4(nrecall_b)},
                            {"increase", pct_json(nrecall_increase)}};
  j["warnings"] = warnings;
  return j;
}

}  // namespace docmap::eval
