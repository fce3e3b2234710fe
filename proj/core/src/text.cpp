#include "conceptrealm/text.hpp"

#include <fstream>

#include "conceptrealm/errors.hpp"
#include "conceptrealm/porter.hpp"

namespace conceptrealm {

namespace {

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char c = s[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    if (c != prefix[i]) return false;
  }
  return true;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Blanks ``` fenced blocks and URLs so the letter scan never sees them.
std::string strip_regions(std::string_view text) {
  std::string s(text);
  std::size_t pos = 0;
  while ((pos = s.find("```", pos)) != std::string::npos) {
    std::size_t close = s.find("```", pos + 3);
    std::size_t end = close == std::string::npos ? s.size() : close + 3;
    for (std::size_t i = pos; i < end; ++i) s[i] = ' ';
    pos = end;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (starts_with_ci(s, i, "http://") || starts_with_ci(s, i, "https://") ||
        starts_with_ci(s, i, "www.")) {
      while (i < s.size() && !is_space(s[i])) s[i++] = ' ';
    }
  }
  return s;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::string s = strip_regions(text);
  std::vector<std::string> tokens;
  std::string current;
  int current_chars = 0;

  auto flush = [&] {
    if (current_chars >= 2) tokens.push_back(current);
    current.clear();
    current_chars = 0;
  };

  for (std::size_t i = 0; i < s.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c >= 'a' && c <= 'z') {
      current.push_back(static_cast<char>(c));
      ++current_chars;
    } else if (c >= 'A' && c <= 'Z') {
      current.push_back(static_cast<char>(c + 32));
      ++current_chars;
    } else if (c == 0xC3 && i + 1 < s.size()) {
      // Latin-1 supplement letters U+00C0..U+00FF except multiplication
      // and division signs; uppercase half folds by +0x20.
      unsigned char nb = static_cast<unsigned char>(s[i + 1]);
      unsigned cp = 0xC0u + (nb - 0x80u);
      if (nb >= 0x80 && nb <= 0xBF && cp != 0xD7 && cp != 0xF7) {
        unsigned char folded = (cp >= 0xC0 && cp <= 0xDE) ? static_cast<unsigned char>(nb + 0x20) : nb;
        current.push_back(static_cast<char>(0xC3));
        current.push_back(static_cast<char>(folded));
        ++current_chars;
        ++i;
      } else {
        flush();
        ++i;
      }
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens,
                                          const StopwordSet& stopwords) {
  std::erase_if(tokens, [&](const std::string& t) { return stopwords.contains(t); });
  return tokens;
}

std::string lemmatize(const std::string& token, const LemmaTable& table) {
  auto it = table.find(token);
  return it == table.end() ? token : it->second;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read stopword file: " + path.string());
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t");
    set.insert(line.substr(b, e - b + 1));
  }
  return set;
}

LemmaTable load_lemma_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read lemma table: " + path.string());
  LemmaTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
      throw DataError("lemma table line " + std::to_string(line_no) + ": expected surface<TAB>lemma");
    table[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return table;
}

std::vector<std::string> preprocess(std::string_view text, const PreprocessOptions& opt) {
  const StopwordSet& stop = opt.stopwords ? *opt.stopwords : default_stopwords();
  std::vector<std::string> tokens = remove_stopwords(tokenize(text), stop);
  for (auto& t : tokens) {
    if (opt.lemmas) t = lemmatize(t, *opt.lemmas);
    t = porter_stem(t);
  }
  return tokens;
}

}  // namespace conceptrealm
