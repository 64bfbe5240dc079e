#include "docmap/adapters.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "docmap/error.hpp"

namespace docmap {

std::string_view engine_kind_name(EngineKind kind) {
  return kind == EngineKind::kLocal ? "local" : "replay";
}

LocalAdapter::LocalAdapter(std::string engine_id, std::string display_name,
                           std::shared_ptr<const InvertedIndex> index)
    : desc_{std::move(engine_id), std::move(display_name), EngineKind::kLocal},
      index_(std::move(index)) {}

RankedResult LocalAdapter::execute(std::string_view query,
                                   std::size_t k) const {
  auto terms = tokenize(query, index_->analysis());
  RankedResult result = local_search(*index_, terms, k);
  result.query_id = std::string(query);
  return result;
}

ReplayAdapter::ReplayAdapter(std::string engine_id, std::string path)
    : desc_{engine_id, engine_id, EngineKind::kReplay},
      path_(std::move(path)) {}

RankedResult ReplayAdapter::execute(std::string_view query,
                                    std::size_t k) const {
  std::ifstream in(path_, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kAdapterFormat,
                desc_.engine_id + ": cannot read replay file " + path_);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_replay(buf.str(), path_, query, k);
}

RankedResult parse_replay(std::string_view content, std::string_view source,
                          std::string_view query, std::size_t k) {
  RankedResult result;
  result.query_id = std::string(query);
  std::unordered_set<std::string> seen;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    auto line = content.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    auto fail = [&](const std::string& why) {
      return Error(ErrorCode::kAdapterFormat, std::string(source) + " line " +
                                                  std::to_string(lineno) +
                                                  ": " + why);
    };
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw fail("malformed JSON");
    }
    if (!j.is_object()) throw fail("expected a JSON object");
    for (const char* field : {"id", "title", "body"}) {
      if (!j.contains(field)) throw fail(std::string("missing `") + field + "`");
      if (!j[field].is_string()) {
        throw fail(std::string("`") + field + "` must be a string");
      }
    }
    if (!j.contains("rank") || !j["rank"].is_number_integer() ||
        j["rank"].get<long long>() < 1) {
      throw fail("`rank` must be a positive integer");
    }
    if (!j.contains("score") || !j["score"].is_number()) {
      throw fail("`score` must be a number");
    }
    double score = j["score"].get<double>();
    if (!(score >= 0.0) || !std::isfinite(score)) {
      throw fail("`score` must be finite and >= 0");
    }
    Document d{j["id"].get<std::string>(), j["title"].get<std::string>(),
               j["body"].get<std::string>()};
    if (d.id.empty()) throw fail("`id` must be non-empty");
    if (d.title.empty()) throw fail("`title` must be non-empty");
    if (!seen.insert(d.id).second) throw fail("duplicate id " + d.id);

    if (result.entries.size() < k) {
      std::size_t rank = result.entries.size() + 1;
      result.entries.push_back({std::move(d), score, rank});
    }
  }
  return result;
}

void AdapterRegistry::add(std::unique_ptr<RetrievalAdapter> adapter) {
  for (const auto& a : adapters_) {
    if (a->descriptor().engine_id == adapter->descriptor().engine_id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate engine id " + adapter->descriptor().engine_id);
    }
  }
  adapters_.push_back(std::move(adapter));
}

std::vector<EngineDescriptor> AdapterRegistry::list_engines() const {
  std::vector<EngineDescriptor> out;
  out.reserve(adapters_.size());
  for (const auto& a : adapters_) out.push_back(a->descriptor());
  return out;
}

RankedResult AdapterRegistry::execute_query(std::string_view engine_id,
                                            std::string_view query,
                                            std::size_t k) const {
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "execute_query: k must be >= 1");
  }
  for (const auto& a : adapters_) {
    if (a->descriptor().engine_id == engine_id) return a->execute(query, k);
  }
  throw Error(ErrorCode::kNoSuchEngine,
              "no engine named '" + std::string(engine_id) + "'");
}

}  // namespace docmap
