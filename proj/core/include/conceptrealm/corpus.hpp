#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conceptrealm/text.hpp"
#include "conceptrealm/timeutil.hpp"

namespace conceptrealm {

enum class DocKind { Issue, Comment };

struct RawIssue {
  std::string project;
  std::string id;
  std::string title;
  std::string description;  // may be empty
  UtcTime created_at;
  std::optional<std::string> assignee;
  std::optional<std::string> reporter;
};

struct RawComment {
  std::string project;
  std::string issue_id;
  std::string id;
  std::string author;
  std::string body;
  UtcTime created_at;
};

struct RecordError {
  std::size_t line = 0;  // 1-based input line, 0 for post-parse integrity checks
  std::string message;
};

struct ParseResult {
  std::vector<RawIssue> issues;
  std::vector<RawComment> comments;
  std::vector<RecordError> errors;
};

// JSON Lines import. Malformed lines land in `errors` with their line
// number; an unreadable file throws DataError.
ParseResult parse_export(const std::filesystem::path& path);

struct Vocabulary {
  std::vector<std::string> terms;                 // lexicographically sorted
  std::vector<std::int64_t> document_frequency;   // parallel to terms
  std::int64_t total_documents = 0;
  int no_below = 15;
  double no_above = 0.5;
  std::int64_t discarded_terms = 0;
  std::unordered_map<std::string, int> index;

  int size() const { return static_cast<int>(terms.size()); }
  std::optional<int> lookup(const std::string& term) const;
};

// df filter: keep terms with no_below <= df and df <= no_above * N.
// Throws NotAnalyzableError when nothing survives.
Vocabulary build_vocabulary(std::span<const std::vector<std::string>> docs,
                            int no_below, double no_above);

// A preprocessed, vectorized document. Tokens are vocabulary indices in
// original text order with out-of-vocabulary tokens dropped; counts is the
// histogram of tokens.
struct Document {
  std::string doc_id;  // "i:<issue-id>" or "c:<comment-id>"
  DocKind kind = DocKind::Issue;
  std::optional<std::string> author_or_assignee;
  UtcTime timestamp;
  std::vector<std::int32_t> tokens;
  std::map<std::int32_t, std::int32_t> counts;
};

Document to_bow(std::string doc_id, DocKind kind,
                std::optional<std::string> author_or_assignee, UtcTime timestamp,
                std::span<const std::string> tokens, const Vocabulary& vocab);

// weight(t) = tf(t,d) * ln(N / df(t)); df == N gives exactly 0.
std::map<std::int32_t, double> to_tfidf(const Document& doc, const Vocabulary& vocab);

struct CorpusOptions {
  PreprocessOptions preprocess;
  std::unordered_map<std::string, std::string> aliases;  // author -> canonical id
  int no_below = 15;
  double no_above = 0.5;
};

// One project's corpus. Raw records are kept (sorted by creation time then
// id); preprocessed tokens are stored as references into `all_terms` so the
// exact token streams survive serialization and sub-corpora can be rebuilt
// (the alignment analysis re-runs vocabulary construction on half-years).
struct ProjectCorpus {
  std::string project;
  std::vector<RawIssue> issues;
  std::vector<RawComment> comments;
  std::vector<std::string> all_terms;                    // sorted distinct tokens
  std::vector<std::vector<std::int32_t>> issue_terms;    // parallel to issues
  std::vector<std::vector<std::int32_t>> comment_terms;  // parallel to comments
  std::vector<RecordError> record_errors;
  int no_below = 15;
  double no_above = 0.5;

  std::vector<std::vector<std::string>> token_streams(bool issues_only = false) const;
  std::vector<std::string> tokens_of_issue(std::size_t i) const;
  std::vector<std::string> tokens_of_comment(std::size_t i) const;
};

// Groups parse output by project (sorted by key), applies preprocessing,
// checks record integrity (duplicate ids, comments referencing unknown
// issues are dropped into record_errors).
std::vector<ProjectCorpus> build_corpora(const ParseResult& parsed, const CorpusOptions& opt);

// Vocabulary + doc_id-sorted vectorized documents for a corpus. Throws
// NotAnalyzableError if the vocabulary filter leaves nothing.
struct VectorizedCorpus {
  Vocabulary vocab;
  std::vector<Document> documents;  // sorted by doc_id
};
VectorizedCorpus vectorize(const ProjectCorpus& corpus, bool issues_only_vocab = false);

// Whole years between first and last activity timestamp.
int project_age_years(const ProjectCorpus& corpus);
int clamp_age_bracket(int age_years);  // clamped to [3,10]

// Versioned JSON persistence of one project's corpus (raw records plus
// preprocessed token streams); the exchange format between pipeline stages.
std::string corpus_to_json(const ProjectCorpus& corpus);
ProjectCorpus corpus_from_json(const std::string& bytes);

}  // namespace conceptrealm
