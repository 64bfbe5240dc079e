#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "docmap/adapters.hpp"
#include "docmap/bundle.hpp"
#include "docmap/pipeline.hpp"

namespace docmap {

struct ServiceConfig {
  PipelineConfig pipeline;
  std::size_t session_cap = 64;
};

// A run-file rendering of one session's selection.
struct ExportedRun {
  std::string query_id;
  std::vector<std::string> doc_ids;
  std::string run_text;  // "query_id rank doc_id score" lines
};

struct SessionSnapshot {
  std::string engine_id;
  std::string query_echo;
  bool has_bundle = false;
  std::vector<std::string> pressed;
  std::set<std::string> examined;
};

// Grants the lock in the order lock() was called.
class FifoMutex {
 public:
  void lock();
  void unlock();

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  unsigned long long next_ = 0;
  unsigned long long serving_ = 0;
};

// Pressed documents in press order, then the rest in original rank order.
std::vector<std::string> compose_export(
    const std::vector<std::string>& ranked_ids,
    const std::vector<std::string>& pressed);

// Run-file query id for a query string: whitespace runs become '_'.
std::string run_query_id(std::string_view query);

// Session lifecycle and the per-session operations. Sessions run
// concurrently; operations on one session are applied one at a time in
// arrival order.
class PresentationService {
 public:
  PresentationService(ServiceConfig config,
                      std::shared_ptr<const AdapterRegistry> adapters);

  std::vector<EngineDescriptor> list_engines() const;

  // Throws Error(kServerBusy) when session_cap sessions are open.
  std::string open_session();

  // Runs the query with k = grid capacity, analyzes the result, stores the
  // bundle and clears pressed/examined state.
  std::shared_ptr<const MapBundle> search(std::string_view session,
                                          std::string_view engine_id,
                                          std::string_view query);

  // Full document from the current result; marks it examined.
  Document get_document(std::string_view session, std::string_view doc_id);

  std::vector<std::string> toggle_press(std::string_view session,
                                        std::string_view doc_id);

  // Throws Error(kNoSearchYet) before the first search. An empty
  // `query_id` derives one from the query text.
  ExportedRun export_session(std::string_view session,
                             std::string_view query_id = {});

  void close_session(std::string_view session);

  SessionSnapshot snapshot(std::string_view session);
  std::size_t active_sessions() const;
  const ServiceConfig& config() const { return config_; }

 private:
  struct Session {
    FifoMutex order;
    bool closed = false;
    std::string engine_id;
    std::string query_echo;
    RankedResult result;
    std::shared_ptr<const MapBundle> bundle;
    std::unordered_map<std::string, std::size_t> slot_of;
    std::vector<std::string> pressed;
    std::set<std::string> examined;
    std::chrono::system_clock::time_point created_at;
  };

  std::shared_ptr<Session> find(std::string_view token) const;
  // Locks the session in arrival order and rejects closed sessions.
  std::unique_lock<FifoMutex> acquire(Session& s, std::string_view token) const;
  static std::size_t require_document(const Session& s,
                                      std::string_view doc_id);

  ServiceConfig config_;
  std::shared_ptr<const AdapterRegistry> adapters_;

  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 rng_;
};

}  // namespace docmap
