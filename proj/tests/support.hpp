#pragma once

#include <random>
#include <string>
#include <vector>

#include "docmap/index.hpp"

namespace docmap::testing {

inline Document doc(std::string id, std::string title, std::string body = "") {
  return {std::move(id), std::move(title), std::move(body)};
}

// Random corpus over a small vocabulary so terms repeat across documents.
inline std::vector<Document> random_corpus(std::mt19937& rng, std::size_t n,
                                           std::size_t vocab = 12,
                                           std::size_t max_len = 15) {
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::vector<Document> docs;
  for (std::size_t i = 0; i < n; ++i) {
    std::string body;
    for (std::size_t k = len(rng); k > 0; --k) {
      body += "w" + std::to_string(word(rng)) + " ";
    }
    char id[32];
    std::snprintf(id, sizeof id, "d%03zu", i);
    docs.push_back({id, "t" + std::to_string(i), body});
  }
  return docs;
}

}  // namespace docmap::testing
