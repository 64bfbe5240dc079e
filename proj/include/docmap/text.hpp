#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace docmap {

struct AnalysisConfig {
  std::set<std::string, std::less<>> stopwords;
  bool stemming = false;

  // Stopwords from the built-in list, stemming off.
  static AnalysisConfig defaults();
};

// The built-in stopword list; identical to data/stopwords.txt.
const std::vector<std::string>& default_stopwords();

// One lowercase word per line; blank lines and surrounding whitespace are
// ignored. Throws Error(kIo) if the file cannot be read.
std::set<std::string, std::less<>> load_stopwords(
    const std::filesystem::path& path);

// Harman's S-stemmer: the first applicable rule of ies->y (not -eies,
// -aies), es->e (not -aes, -ees, -oes), s->"" (not -us, -ss).
std::string strip_suffix(std::string_view term);

// Splits on any non-alphanumeric byte and lowercases ASCII letters. Bytes
// >= 0x80 are treated as word characters so UTF-8 sequences stay intact.
// Stopwords are removed before stemming.
std::vector<std::string> tokenize(std::string_view text,
                                  const AnalysisConfig& config);

}  // namespace docmap
