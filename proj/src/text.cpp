#include "docmap/text.hpp"

#include <fstream>

#include "docmap/error.hpp"

namespace docmap {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char fold(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> words = {
      "a",     "about", "an",    "and",   "are",   "as",    "at",
      "be",    "but",   "by",    "for",   "from",  "has",   "have",
      "he",    "her",   "his",   "how",   "i",     "in",    "into",
      "is",    "it",    "its",   "not",   "of",    "on",    "or",
      "our",   "she",   "so",    "that",  "the",   "their", "them",
      "then",  "there", "these", "they",  "this",  "those", "to",
      "was",   "we",    "were",  "what",  "when",  "where", "which",
      "while", "who",   "will",  "with",  "you",   "your",
  };
  return words;
}

AnalysisConfig AnalysisConfig::defaults() {
  AnalysisConfig config;
  config.stopwords.insert(default_stopwords().begin(),
                          default_stopwords().end());
  return config;
}

std::set<std::string, std::less<>> load_stopwords(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read stopword file " + path.string());
  }
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    words.insert(line.substr(first, last - first + 1));
  }
  return words;
}

std::string strip_suffix(std::string_view term) {
  std::string t(term);
  if (ends_with(t, "ies") && !ends_with(t, "eies") && !ends_with(t, "aies")) {
    t.replace(t.size() - 3, 3, "y");
  } else if (ends_with(t, "es") && !ends_with(t, "aes") &&
             !ends_with(t, "ees") && !ends_with(t, "oes")) {
    t.pop_back();
  } else if (ends_with(t, "s") && !ends_with(t, "us") && !ends_with(t, "ss")) {
    t.pop_back();
  }
  // Never strip a word down to nothing ("s", "es").
  return t.empty() ? std::string(term) : t;
}

std::vector<std::string> tokenize(std::string_view text,
                                  const AnalysisConfig& config) {
  std::vector<std::string> terms;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (!config.stopwords.contains(current)) {
      terms.push_back(config.stemming ? strip_suffix(current) : current);
    }
    current.clear();
  };
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      current.push_back(fold(c));
    } else {
      flush();
    }
  }
  flush();
  return terms;
}

}  // namespace docmap
