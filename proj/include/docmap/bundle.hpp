#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docmap/index.hpp"
#include "docmap/layers.hpp"

namespace docmap {

struct GridSpec {
  std::size_t rows = 10;
  std::size_t cols = 10;

  std::size_t capacity() const { return rows * cols; }
  // Throws Error(kInvalidArgument) unless rows * cols >= 1.
  void validate() const;
  // "RxC", e.g. "10x10".
  static GridSpec parse(std::string_view text);

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct GridCell {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

// Row-major by original rank: rank r sits at ((r-1) / cols, (r-1) % cols).
// Throws Error(kInvalidArgument) if the result does not fit the grid.
std::map<std::size_t, GridCell> assign_grid(const RankedResult& ranked,
                                            const GridSpec& grid);

// A layer ready for assembly: its spec plus scores keyed by document id.
// Cluster layers also carry their member set.
struct ScoredLayer {
  LayerSpec spec;
  LayerScores scores;
  std::optional<std::set<std::string>> members;
};

struct BundleDocument {
  std::string id;
  std::string title;
  std::size_t rank = 0;

  friend bool operator==(const BundleDocument&,
                         const BundleDocument&) = default;
};

struct BundleLayer {
  LayerSpec spec;
  double hue = 0.0;                 // degrees in [0, 360)
  std::vector<double> brightness;   // grid order
  double raw_min = 0.0;             // similarity at brightness 0
  double raw_max = 0.0;             // similarity at brightness 1
  std::vector<bool> members;        // grid order; cluster layers only

  friend bool operator==(const BundleLayer&, const BundleLayer&) = default;
};

struct MapBundle {
  GridSpec grid;
  std::vector<BundleDocument> documents;  // grid order (= rank order)
  std::vector<BundleLayer> layers;
  std::string query_echo;

  friend bool operator==(const MapBundle&, const MapBundle&) = default;
};

// Hue of layer i among n, evenly spaced around the color wheel.
double layer_hue(std::size_t index, std::size_t count);

// Query layers first, then cluster layers, each array indexed by grid
// position so position p names the same document in every layer. Duplicate
// labels get the layer id appended. Throws Error(kInconsistentLayer) when a
// layer's scores do not cover exactly the ranked documents.
MapBundle build_bundle(const RankedResult& ranked,
                       std::span<const ScoredLayer> query_layers,
                       std::span<const ScoredLayer> cluster_layers,
                       const GridSpec& grid, std::string query_echo);

}  // namespace docmap
