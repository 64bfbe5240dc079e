// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Every tolerance and time budget is fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "docmap/clustering.hpp"
#include "docmap/error.hpp"
#include "docmap/eval.hpp"
#include "docmap/net.hpp"
#include "docmap/protocol.hpp"
#include "docmap/service.hpp"
#include "eval_oracles.hpp"

namespace {

using namespace docmap;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kOracleTolerance = 1e-12;
constexpr double kPrecisionTableBudgetSeconds = 1.0;
constexpr double kOracleBudgetSeconds = 30.0;
constexpr double kBundleBudgetSeconds = 5.0;
constexpr int kConcurrentSessions = 10;
constexpr int kSessionRounds = 20;

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// --- 1. Precision table --------------------------------------------------------

Outcome precision_table_arithmetic() {
  Outcome out;
  auto t0 = Clock::now();
  const eval::ElevenPoint original = {0.4502, 0.3405, 0.2633, 0.2390,
                                      0.2223, 0.2058, 0.1948, 0.1884,
                                      0.1840, 0.1776, 0.1750};
  const eval::ElevenPoint with_maps = {0.6632, 0.5659, 0.4683, 0.4307,
                                       0.3847, 0.3611, 0.2915, 0.2512,
                                       0.2325, 0.2061, 0.2033};
  const long expected[11] = {47, 66, 78, 80, 73, 75, 50, 33, 26, 16, 16};
  eval::RunSummary a, b;
  a.interpolated = original;
  b.interpolated = with_maps;
  a.queries = b.queries = 30;
  auto report = eval::compare_summaries(a, b, {});
  auto j = report.to_json();
  for (int l = 0; l <= 10; ++l) {
    out.check(j["levels"][l]["increase"] == expected[l],
              "level " + std::to_string(l) + " increase " +
                  j["levels"][l]["increase"].dump());
  }
  out.check(j["average"]["a"] == 0.2401, "average A " + j["average"]["a"].dump());
  out.check(j["average"]["b"] == 0.3690, "average B " + j["average"]["b"].dump());
  out.check(j["average"]["increase"] == 51,
            "average increase " + j["average"]["increase"].dump());
  auto text = report.to_text();
  out.check(text.find("Average               0.2401    0.3690          51") !=
                std::string::npos,
            "text Average row");
  double s = seconds_since(t0);
  out.check(s < kPrecisionTableBudgetSeconds, "took " + std::to_string(s) + " s");
  return out;
}

// --- 2. Normalized recall --------------------------------------------------

Outcome nrecall_improvement() {
  Outcome out;
  eval::RunSummary a, b;
  a.normalized_recall = 0.5325;
  b.normalized_recall = 0.6624;
  auto j = eval::compare_summaries(a, b, {}).to_json();
  out.check(j["normalized_recall"]["increase"] == 24,
            "increase " + j["normalized_recall"]["increase"].dump());
  out.check(j["normalized_recall"]["a"] == 0.5325 &&
                j["normalized_recall"]["b"] == 0.6624,
            "means echoed");
  return out;
}

// --- 3. P@10 ---------------------------------------------------------------

Outcome cutoff_arithmetic() {
  Outcome out;
  // Two queries: 4 + 3 relevant in the top 10 with document maps, 1 + 2 in
  // the original list, i.e. 3.5 vs 1.5 on average.
  eval::QrelSet qrels;
  for (int i = 0; i < 10; ++i) {
    qrels.add("q1", "r" + std::to_string(i), 1);
    qrels.add("q2", "r" + std::to_string(i), 1);
  }
  auto make = [](int relevant_in_top10) {
    std::vector<std::string> list;
    for (int i = 0; i < 10; ++i) {
      list.push_back(i < relevant_in_top10 ? "r" + std::to_string(i)
                                           : "n" + std::to_string(i));
    }
    return list;
  };
  eval::Run original{{"q1", make(1)}, {"q2", make(2)}};
  eval::Run with_maps{{"q1", make(4)}, {"q2", make(3)}};
  const std::size_t cutoffs[] = {10};
  auto report = eval::comparison_report(original, with_maps, qrels, cutoffs);
  out.check(report.cutoffs.size() == 1, "one cutoff row");
  out.check(eval::round_to(report.cutoffs[0].a, 4) == 0.15,
            "P@10 original " + std::to_string(report.cutoffs[0].a));
  out.check(eval::round_to(report.cutoffs[0].b, 4) == 0.35,
            "P@10 with maps " + std::to_string(report.cutoffs[0].b));
  return out;
}

// --- 4. Metric oracles -----------------------------------------------------

Outcome metric_oracles() {
  Outcome out;
  auto t0 = Clock::now();
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 8 && out.ok; ++n) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      int r = __builtin_popcount(mask);
      if (r < 1 || r > 3) continue;
      std::vector<std::string> ids;
      std::set<std::string> rel;
      for (std::size_t i = 0; i < n; ++i) {
        ids.push_back("d" + std::to_string(i));
        if (mask >> i & 1u) rel.insert(ids.back());
      }
      ++cases;
      auto got = eval::interpolated_precision_11pt(ids, rel);
      auto want = testing::oracle_11pt(ids, rel);
      for (int l = 0; l <= 10; ++l) {
        out.check(std::fabs(got[l] - want[l]) <= kOracleTolerance,
                  "11pt mismatch n=" + std::to_string(n) +
                      " mask=" + std::to_string(mask));
      }
      if (static_cast<std::size_t>(r) < n) {
        out.check(std::fabs(eval::normalized_recall(ids, rel) -
                            testing::oracle_nrecall(ids, rel)) <=
                      kOracleTolerance,
                  "nrecall mismatch n=" + std::to_string(n) +
                      " mask=" + std::to_string(mask));
      }
    }
  }
  out.check(cases > 0, "no cases");
  double s = seconds_since(t0);
  out.check(s < kOracleBudgetSeconds, "took " + std::to_string(s) + " s");
  if (out.ok) out.detail = std::to_string(cases) + " rankings";
  return out;
}

// --- 5. End-to-end bundle --------------------------------------------------

std::shared_ptr<const AdapterRegistry> toy_registry() {
  auto index = std::make_shared<const InvertedIndex>(
      load_corpus(DOCMAP_DATA_DIR "/toy_corpus.jsonl"),
      AnalysisConfig::defaults());
  auto reg = std::make_shared<AdapterRegistry>();
  reg->add(std::make_unique<LocalAdapter>("local", "Local corpus", index));
  reg->add(std::make_unique<ReplayAdapter>(
      "replay", DOCMAP_DATA_DIR "/replay_sample.jsonl"));
  return reg;
}

std::string search_line(const std::shared_ptr<const AdapterRegistry>& reg) {
  PresentationService svc(ServiceConfig{}, reg);
  ProtocolHandler handler(svc);
  auto opened = json::parse(handler.handle_line(R"({"op":"open_session"})"));
  json req{{"op", "search"},
           {"session", opened["body"]["session"]},
           {"engine", "local"},
           {"query", "cat dog"}};
  return handler.handle_line(req.dump());
}

Outcome end_to_end_bundle() {
  Outcome out;
  auto t0 = Clock::now();
  auto reg = toy_registry();
  std::string first = search_line(reg);
  auto r = json::parse(first);
  out.check(r["ok"] == true, "search failed: " + first.substr(0, 200));
  if (!out.ok) return out;
  const auto& body = r["body"];
  const auto& docs = body["documents"];
  std::size_t query_layers = 0, cluster_layers = 0;
  for (const auto& l : body["layers"]) {
    (l["kind"] == "cluster" ? cluster_layers : query_layers)++;
    const auto& br = l["brightness"];
    out.check(br.size() == docs.size(), "brightness length");
    double lo = 2, hi = -1;
    for (const auto& v : br) {
      double x = v.get<double>();
      out.check(x >= 0.0 && x <= 1.0, "brightness out of range");
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    bool degenerate = l["range"][0] == l["range"][1];
    if (!degenerate) {
      out.check(lo == 0.0 && hi == 1.0,
                "layer " + l["id"].get<std::string>() + " misses 0 or 1");
    }
  }
  out.check(query_layers == 4, "query layers " + std::to_string(query_layers));
  out.check(cluster_layers <= 5 && cluster_layers >= 1,
            "cluster layers " + std::to_string(cluster_layers));

  const std::size_t cols = body["grid"]["cols"];
  const std::size_t rows = body["grid"]["rows"];
  std::set<std::pair<std::size_t, std::size_t>> cells;
  std::set<std::size_t> ranks;
  for (std::size_t p = 0; p < docs.size(); ++p) {
    std::size_t rank = docs[p]["rank"];
    out.check(rank == p + 1, "rank at position " + std::to_string(p));
    ranks.insert(rank);
    cells.insert({(rank - 1) / cols, (rank - 1) % cols});
  }
  out.check(cells.size() == docs.size() && ranks.size() == docs.size() &&
                docs.size() <= rows * cols,
            "grid positions not bijective with ranks");

  for (int run = 0; run < 3; ++run) {
    out.check(search_line(toy_registry()) == first,
              "output differs across runs");
  }
  double s = seconds_since(t0);
  out.check(s < kBundleBudgetSeconds, "took " + std::to_string(s) + " s");
  if (out.ok) {
    out.detail = std::to_string(docs.size()) + " documents, " +
                 std::to_string(query_layers) + "+" +
                 std::to_string(cluster_layers) + " layers";
  }
  return out;
}

// --- 6. Clustering oracle --------------------------------------------------

std::vector<BaseCluster> phrase_oracle(const std::vector<Document>& docs,
                                       const AnalysisConfig& analysis,
                                       std::size_t max_len) {
  std::map<Phrase, std::set<std::string>> seen;
  for (const auto& d : docs) {
    auto t = tokenize(d.title + " " + d.body, analysis);
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t len = 1; len <= max_len && i + len <= t.size(); ++len) {
        seen[Phrase(t.begin() + i, t.begin() + i + len)].insert(d.id);
      }
    }
  }
  std::vector<BaseCluster> out;
  for (const auto& [p, members] : seen) {
    if (members.size() < 2) continue;
    bool maximal = std::none_of(seen.begin(), seen.end(), [&](const auto& q) {
      return q.first.size() > p.size() && q.second == members &&
             std::search(q.first.begin(), q.first.end(), p.begin(),
                         p.end()) != q.first.end();
    });
    if (maximal) {
      out.push_back({p, members, score_base_cluster(members.size(), p.size())});
    }
  }
  return out;
}

Outcome clustering_oracle() {
  Outcome out;
  std::vector<Document> docs = {
      {"d1", "digital library", "search engine for the digital library"},
      {"d2", "digital library systems", "a search engine"},
      {"d3", "cat food", "dry cat food for cats"},
      {"d4", "cat food review", "digital library of cat food"},
      {"d5", "search engine ranking", "ranking the search engine"}};
  auto analysis = AnalysisConfig::defaults();
  ClusterConfig config;
  auto bases = build_base_clusters(docs, analysis, config);
  auto sorted = bases;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.phrase < b.phrase; });
  out.check(sorted == phrase_oracle(docs, analysis, config.max_phrase_len),
            "base clusters differ from phrase enumeration");

  auto reference = merge_base_clusters(bases, config.merge_threshold,
                                       config.top_bases);
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 200 && out.ok; ++trial) {
    auto shuffled = bases;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto merged = merge_base_clusters(shuffled, config.merge_threshold,
                                      config.top_bases);
    bool same = merged.size() == reference.size();
    for (std::size_t i = 0; same && i < merged.size(); ++i) {
      same = merged[i].members == reference[i].members &&
             merged[i].bases == reference[i].bases &&
             merged[i].score == reference[i].score;
    }
    out.check(same, "merge depends on input order");
  }
  if (out.ok) {
    out.detail = std::to_string(bases.size()) + " bases, " +
                 std::to_string(reference.size()) + " clusters";
  }
  return out;
}

// --- 7. Concurrent sessions ------------------------------------------------

Outcome concurrent_sessions() {
  Outcome out;
  auto reg = toy_registry();
  PresentationService svc(ServiceConfig{}, reg);
  ProtocolHandler handler(svc);
  TcpServer server(handler, 0);
  server.start();

  const std::vector<std::pair<std::string, std::string>> searches = {
      {"local", "cat dog"},         {"local", "pet food"},
      {"local", "library search"},  {"replay", "anything"},
      {"local", "veterinary clinic"}, {"local", "dog training"}};

  std::vector<std::string> failures(kConcurrentSessions);
  std::vector<std::thread> threads;
  for (int t = 0; t < kConcurrentSessions; ++t) {
    threads.emplace_back([&, t] {
      auto fail = [&](const std::string& why) {
        if (failures[t].empty()) failures[t] = why;
      };
      try {
        LineClient client("127.0.0.1", server.port());
        std::mt19937 rng(1000 + t);
        auto opened = client.call(json{{"op", "open_session"}});
        std::string s = opened["body"]["session"];
        std::vector<std::string> ranked, pressed;
        std::set<std::string> examined;
        for (int round = 0; round < kSessionRounds; ++round) {
          std::uniform_int_distribution<int> action(0, 9);
          int a = ranked.empty() ? 0 : action(rng);
          if (a == 0) {
            const auto& [engine, query] =
                searches[std::uniform_int_distribution<std::size_t>(
                    0, searches.size() - 1)(rng)];
            auto r = client.call(json{{"op", "search"},
                                      {"session", s},
                                      {"engine", engine},
                                      {"query", query}});
            if (r["ok"] != true) return fail("search: " + r.dump());
            ranked.clear();
            for (const auto& d : r["body"]["documents"]) ranked.push_back(d["id"]);
            pressed.clear();
            examined.clear();
          } else if (a <= 6) {
            const auto& doc = ranked[std::uniform_int_distribution<std::size_t>(
                0, ranked.size() - 1)(rng)];
            auto r = client.call(
                json{{"op", "toggle_press"}, {"session", s}, {"doc", doc}});
            auto it = std::find(pressed.begin(), pressed.end(), doc);
            if (it == pressed.end()) {
              pressed.push_back(doc);
            } else {
              pressed.erase(it);
            }
            if (r["body"]["pressed"] != json(pressed)) {
              return fail("pressed state leaked or lost: " + r.dump());
            }
          } else if (a <= 7) {
            const auto& doc = ranked.front();
            auto r = client.call(
                json{{"op", "get_document"}, {"session", s}, {"doc", doc}});
            if (r["ok"] != true || r["body"]["id"] != doc) {
              return fail("get_document: " + r.dump());
            }
            examined.insert(doc);
          } else {
            auto r = client.call(json{{"op", "export"}, {"session", s}});
            if (r["ok"] != true) return fail("export: " + r.dump());
            std::vector<std::string> got = r["body"]["documents"];
            if (got != compose_export(ranked, pressed)) {
              return fail("export is not pressed order + residual");
            }
            auto sorted_got = got, sorted_ranked = ranked;
            std::sort(sorted_got.begin(), sorted_got.end());
            std::sort(sorted_ranked.begin(), sorted_ranked.end());
            if (sorted_got != sorted_ranked) {
              return fail("export is not a permutation of the bundle");
            }
          }
        }
        auto snap = svc.snapshot(s);
        if (snap.pressed != pressed || snap.examined != examined) {
          fail("final session state differs from its own operation history");
        }
        client.call(json{{"op", "close"}, {"session", s}});
      } catch (const std::exception& e) {
        fail(e.what());
      }
    });
  }
  for (auto& th : threads) th.join();
  server.stop();
  for (int t = 0; t < kConcurrentSessions; ++t) {
    out.check(failures[t].empty(),
              "session " + std::to_string(t) + ": " + failures[t]);
  }
  out.check(svc.active_sessions() == 0, "sessions left open");
  if (out.ok) {
    out.detail = std::to_string(kConcurrentSessions) + " sessions x " +
                 std::to_string(kSessionRounds) + " requests";
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria =
      {{"1 precision-table-arithmetic", precision_table_arithmetic},
       {"2 normalized-recall-improvement", nrecall_improvement},
       {"3 precision-at-10", cutoff_arithmetic},
       {"4 metric-oracle-equivalence", metric_oracles},
       {"5 end-to-end-bundle", end_to_end_bundle},
       {"6 clustering-oracle", clustering_oracle},
       {"7 concurrent-session-semantics", concurrent_sessions}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s%s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(),
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    failed += !o.ok;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
