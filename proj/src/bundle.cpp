#include "docmap/bundle.hpp"

#include <algorithm>
#include <charconv>

#include "docmap/error.hpp"

namespace docmap {

void GridSpec::validate() const {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "grid must have rows, cols >= 1");
  }
}

GridSpec GridSpec::parse(std::string_view text) {
  auto x = text.find_first_of("xX");
  auto bad = [&] {
    return Error(ErrorCode::kInvalidArgument,
                 "grid must look like RxC, got '" + std::string(text) + "'");
  };
  if (x == std::string_view::npos) throw bad();
  auto number = [&](std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw bad();
    }
    return v;
  };
  GridSpec g{number(text.substr(0, x)), number(text.substr(x + 1))};
  g.validate();
  return g;
}

std::map<std::size_t, GridCell> assign_grid(const RankedResult& ranked,
                                            const GridSpec& grid) {
  grid.validate();
  if (ranked.size() > grid.capacity()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::to_string(ranked.size()) + " documents overflow a " +
                    std::to_string(grid.rows) + "x" +
                    std::to_string(grid.cols) + " grid");
  }
  std::map<std::size_t, GridCell> cells;
  for (const auto& e : ranked.entries) {
    const std::size_t r = e.original_rank;
    if (r < 1 || r > grid.capacity()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rank " + std::to_string(r) + " outside the grid");
    }
    cells[r] = {(r - 1) / grid.cols, (r - 1) % grid.cols};
  }
  return cells;
}

double layer_hue(std::size_t index, std::size_t count) {
  return count == 0 ? 0.0
                    : 360.0 * static_cast<double>(index) /
                          static_cast<double>(count);
}

MapBundle build_bundle(const RankedResult& ranked,
                       std::span<const ScoredLayer> query_layers,
                       std::span<const ScoredLayer> cluster_layers,
                       const GridSpec& grid, std::string query_echo) {
  auto cells = assign_grid(ranked, grid);

  MapBundle bundle;
  bundle.grid = grid;
  bundle.query_echo = std::move(query_echo);

  // Cells are keyed by rank, so iterating them walks the grid row-major.
  std::map<std::size_t, const RankedEntry*> at_rank;
  for (const auto& e : ranked.entries) at_rank[e.original_rank] = &e;
  if (at_rank.size() != ranked.size() ||
      (!at_rank.empty() && at_rank.rbegin()->first != ranked.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "ranked result ranks are not exactly 1..n");
  }
  std::vector<const RankedEntry*> by_rank;
  for (const auto& [rank, cell] : cells) by_rank.push_back(at_rank.at(rank));
  for (const auto* e : by_rank) {
    bundle.documents.push_back({e->doc.id, e->doc.title, e->original_rank});
  }

  const std::size_t total = query_layers.size() + cluster_layers.size();
  std::set<std::string> labels;
  auto add = [&](const ScoredLayer& in) {
    const auto& spec = in.spec;
    if (in.scores.raw.size() != by_rank.size() ||
        in.scores.brightness.size() != by_rank.size()) {
      throw Error(ErrorCode::kInconsistentLayer,
                  "layer " + spec.layer_id + " scores " +
                      std::to_string(in.scores.raw.size()) +
                      " documents, expected " +
                      std::to_string(by_rank.size()));
    }
    BundleLayer out;
    out.spec = spec;
    if (!labels.insert(out.spec.label).second) {
      out.spec.label += " (" + spec.layer_id + ")";
      labels.insert(out.spec.label);
    }
    out.hue = layer_hue(bundle.layers.size(), total);
    bool first = true;
    for (const auto* e : by_rank) {
      auto raw = in.scores.raw.find(e->doc.id);
      auto lit = in.scores.brightness.find(e->doc.id);
      if (raw == in.scores.raw.end() || lit == in.scores.brightness.end()) {
        throw Error(ErrorCode::kInconsistentLayer,
                    "layer " + spec.layer_id + " has no score for " +
                        e->doc.id);
      }
      out.brightness.push_back(lit->second);
      out.raw_min = first ? raw->second : std::min(out.raw_min, raw->second);
      out.raw_max = first ? raw->second : std::max(out.raw_max, raw->second);
      first = false;
      if (in.members) out.members.push_back(in.members->contains(e->doc.id));
    }
    bundle.layers.push_back(std::move(out));
  };
  for (const auto& l : query_layers) add(l);
  for (const auto& l : cluster_layers) add(l);
  return bundle;
}

}  // namespace docmap
