#include "docmap/service.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "docmap/error.hpp"

namespace docmap {

void FifoMutex::lock() {
  std::unique_lock lk(mu_);
  const auto ticket = next_++;
  cv_.wait(lk, [&] { return serving_ == ticket; });
}

void FifoMutex::unlock() {
  {
    std::lock_guard lk(mu_);
    ++serving_;
  }
  cv_.notify_all();
}

std::vector<std::string> compose_export(
    const std::vector<std::string>& ranked_ids,
    const std::vector<std::string>& pressed) {
  std::vector<std::string> out(pressed);
  std::set<std::string_view> taken(pressed.begin(), pressed.end());
  for (const auto& id : ranked_ids) {
    if (!taken.contains(id)) out.push_back(id);
  }
  return out;
}

std::string run_query_id(std::string_view query) {
  std::string id;
  bool gap = false;
  for (unsigned char c : query) {
    if (std::isspace(c)) {
      gap = !id.empty();
    } else {
      if (gap) id.push_back('_');
      gap = false;
      id.push_back(static_cast<char>(c));
    }
  }
  return id.empty() ? "q" : id;
}

PresentationService::PresentationService(
    ServiceConfig config, std::shared_ptr<const AdapterRegistry> adapters)
    : config_(std::move(config)),
      adapters_(std::move(adapters)),
      rng_(std::random_device{}()) {
  if (config_.session_cap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "session cap must be >= 1");
  }
  config_.pipeline.grid.validate();
  config_.pipeline.cluster.validate();
}

std::vector<EngineDescriptor> PresentationService::list_engines() const {
  return adapters_->list_engines();
}

std::string PresentationService::open_session() {
  std::lock_guard lk(mu_);
  if (sessions_.size() >= config_.session_cap) {
    throw Error(ErrorCode::kServerBusy,
                "session cap of " + std::to_string(config_.session_cap) +
                    " reached");
  }
  std::string token;
  do {
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx",
                  static_cast<unsigned long long>(rng_()),
                  static_cast<unsigned long long>(rng_()));
    token = buf;
  } while (sessions_.contains(token));
  auto s = std::make_shared<Session>();
  s->created_at = std::chrono::system_clock::now();
  sessions_.emplace(token, std::move(s));
  return token;
}

std::shared_ptr<PresentationService::Session> PresentationService::find(
    std::string_view token) const {
  std::lock_guard lk(mu_);
  auto it = sessions_.find(std::string(token));
  if (it == sessions_.end()) {
    throw Error(ErrorCode::kNoSuchSession,
                "no session '" + std::string(token) + "'");
  }
  return it->second;
}

std::unique_lock<FifoMutex> PresentationService::acquire(
    Session& s, std::string_view token) const {
  std::unique_lock lk(s.order);
  if (s.closed) {
    throw Error(ErrorCode::kNoSuchSession,
                "session '" + std::string(token) + "' was closed");
  }
  return lk;
}

std::size_t PresentationService::require_document(const Session& s,
                                                  std::string_view doc_id) {
  auto it = s.slot_of.find(std::string(doc_id));
  if (it == s.slot_of.end()) {
    throw Error(ErrorCode::kNoSuchDocument,
                "document '" + std::string(doc_id) +
                    "' is not in the current result");
  }
  return it->second;
}

std::shared_ptr<const MapBundle> PresentationService::search(
    std::string_view session, std::string_view engine_id,
    std::string_view query) {
  auto s = find(session);
  auto lk = acquire(*s, session);

  // Reject empty queries before touching the engine.
  if (tokenize(query, config_.pipeline.analysis).empty()) {
    throw Error(ErrorCode::kEmptyQuery, "query has no terms after analysis");
  }
  RankedResult result;
  try {
    result = adapters_->execute_query(engine_id, query,
                                      config_.pipeline.grid.capacity());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNoSuchEngine) throw;
    throw Error(e.code(), "engine '" + std::string(engine_id) + "': " +
                              e.what());
  }
  auto bundle = std::make_shared<const MapBundle>(
      analyze_results(result, query, config_.pipeline));

  s->engine_id = std::string(engine_id);
  s->query_echo = std::string(query);
  s->slot_of.clear();
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    s->slot_of.emplace(result.entries[i].doc.id, i);
  }
  s->result = std::move(result);
  s->bundle = bundle;
  s->pressed.clear();
  s->examined.clear();
  return bundle;
}

Document PresentationService::get_document(std::string_view session,
                                           std::string_view doc_id) {
  auto s = find(session);
  auto lk = acquire(*s, session);
  auto slot = require_document(*s, doc_id);
  s->examined.insert(std::string(doc_id));
  return s->result.entries[slot].doc;
}

std::vector<std::string> PresentationService::toggle_press(
    std::string_view session, std::string_view doc_id) {
  auto s = find(session);
  auto lk = acquire(*s, session);
  require_document(*s, doc_id);
  auto it = std::find(s->pressed.begin(), s->pressed.end(), doc_id);
  if (it == s->pressed.end()) {
    s->pressed.emplace_back(doc_id);
  } else {
    s->pressed.erase(it);
  }
  return s->pressed;
}

ExportedRun PresentationService::export_session(std::string_view session,
                                                std::string_view query_id) {
  auto s = find(session);
  auto lk = acquire(*s, session);
  if (!s->bundle) {
    throw Error(ErrorCode::kNoSearchYet, "session has no search result yet");
  }
  std::vector<std::string> ranked;
  for (const auto& d : s->bundle->documents) ranked.push_back(d.id);

  ExportedRun run;
  run.query_id = query_id.empty() ? run_query_id(s->query_echo)
                                  : run_query_id(query_id);
  run.doc_ids = compose_export(ranked, s->pressed);
  const std::size_t n = run.doc_ids.size();
  for (std::size_t i = 0; i < n; ++i) {
    run.run_text += run.query_id + " " + std::to_string(i + 1) + " " +
                    run.doc_ids[i] + " " + std::to_string(n - i) + "\n";
  }
  return run;
}

void PresentationService::close_session(std::string_view session) {
  std::shared_ptr<Session> s;
  {
    std::lock_guard lk(mu_);
    auto it = sessions_.find(std::string(session));
    if (it == sessions_.end()) {
      throw Error(ErrorCode::kNoSuchSession,
                  "no session '" + std::string(session) + "'");
    }
    s = std::move(it->second);
    sessions_.erase(it);
  }
  // Requests already queued on this session see it closed.
  std::lock_guard lk(s->order);
  s->closed = true;
}

SessionSnapshot PresentationService::snapshot(std::string_view session) {
  auto s = find(session);
  auto lk = acquire(*s, session);
  return {s->engine_id, s->query_echo, s->bundle != nullptr, s->pressed,
          s->examined};
}

std::size_t PresentationService::active_sessions() const {
  std::lock_guard lk(mu_);
  return sessions_.size();
}

}  // namespace docmap
