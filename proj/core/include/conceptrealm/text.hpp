#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace conceptrealm {

using StopwordSet = std::unordered_set<std::string>;
using LemmaTable = std::unordered_map<std::string, std::string>;

// Lowercased maximal runs of letters (ASCII plus the Latin-1 supplement
// letters). URLs (http://, https://, www.) and ``` code fences are cut out
// before scanning; digits and punctuation separate tokens; tokens shorter
// than 2 characters are dropped.
std::vector<std::string> tokenize(std::string_view text);

// Order-preserving filter.
std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopwordSet& stopwords);

// Table lookup; tokens without an entry pass through unchanged.
std::string lemmatize(const std::string& token, const LemmaTable& table);

// Bundled English function-word list.
const StopwordSet& default_stopwords();

// One token per line, '#' starts a comment, blank lines ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

// UTF-8 TSV, surface<TAB>lemma.
LemmaTable load_lemma_table(const std::filesystem::path& path);

struct PreprocessOptions {
  const StopwordSet* stopwords = nullptr;  // null -> bundled list
  const LemmaTable* lemmas = nullptr;      // null -> identity
};

// tokenize -> stopword removal -> lemmatize -> Porter stem.
std::vector<std::string> preprocess(std::string_view text, const PreprocessOptions& opt = {});

}  // namespace conceptrealm
