#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "docmap/index.hpp"

namespace docmap {

enum class EngineKind { kLocal, kReplay };

std::string_view engine_kind_name(EngineKind kind);

struct EngineDescriptor {
  std::string engine_id;
  std::string display_name;
  EngineKind kind = EngineKind::kLocal;

  friend bool operator==(const EngineDescriptor&,
                         const EngineDescriptor&) = default;
};

// An adapter turns one engine's native output into a RankedResult whose
// original_rank values are exactly 1..n and whose document ids are distinct.
// Implementations hold no per-call state; execute() may run concurrently.
class RetrievalAdapter {
 public:
  virtual ~RetrievalAdapter() = default;
  virtual const EngineDescriptor& descriptor() const = 0;
  virtual RankedResult execute(std::string_view query, std::size_t k) const = 0;
};

// Delegates to local_search over a shared, immutable index.
class LocalAdapter final : public RetrievalAdapter {
 public:
  LocalAdapter(std::string engine_id, std::string display_name,
               std::shared_ptr<const InvertedIndex> index);

  const EngineDescriptor& descriptor() const override { return desc_; }
  RankedResult execute(std::string_view query, std::size_t k) const override;

 private:
  EngineDescriptor desc_;
  std::shared_ptr<const InvertedIndex> index_;
};

// Serves a canned result file: one JSON object per line with `rank`,
// `score`, `id`, `title`, `body`. The file is read on every call and entries
// are kept in file order; the query text is ignored.
class ReplayAdapter final : public RetrievalAdapter {
 public:
  ReplayAdapter(std::string engine_id, std::string path);

  const EngineDescriptor& descriptor() const override { return desc_; }
  RankedResult execute(std::string_view query, std::size_t k) const override;

  const std::string& path() const { return path_; }

 private:
  EngineDescriptor desc_;
  std::string path_;
};

// Parses replay content. `source` names the input in error messages, which
// are Error(kAdapterFormat) and cite the 1-based line number.
RankedResult parse_replay(std::string_view content, std::string_view source,
                          std::string_view query, std::size_t k);

class AdapterRegistry {
 public:
  // Throws Error(kInvalidArgument) on a duplicate engine id.
  void add(std::unique_ptr<RetrievalAdapter> adapter);

  // Registration order.
  std::vector<EngineDescriptor> list_engines() const;

  // Throws Error(kNoSuchEngine) for an unknown id and Error(kInvalidArgument)
  // for k == 0. Adapter errors propagate unchanged.
  RankedResult execute_query(std::string_view engine_id, std::string_view query,
                             std::size_t k) const;

  bool empty() const { return adapters_.empty(); }

 private:
  std::vector<std::unique_ptr<RetrievalAdapter>> adapters_;
};

}  // namespace docmap
