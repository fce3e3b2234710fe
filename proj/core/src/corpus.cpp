#include "conceptrealm/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "conceptrealm/errors.hpp"

namespace conceptrealm {

using nlohmann::json;

namespace {

std::string require_string(const json& rec, const char* field) {
  auto it = rec.find(field);
  if (it == rec.end() || !it->is_string()) {
    throw DataError(std::string("missing or non-string field \"") + field + "\"");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& rec, const char* field) {
  auto it = rec.find(field);
  if (it == rec.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw DataError(std::string("field \"") + field + "\" must be string or null");
  return it->get<std::string>();
}

UtcTime require_timestamp(const json& rec, const char* field) {
  auto ts = parse_iso8601(require_string(rec, field));
  if (!ts) throw DataError(std::string("field \"") + field + "\" is not an ISO-8601 timestamp");
  return *ts;
}

}  // namespace

ParseResult parse_export(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file: " + path.string());
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      json rec = json::parse(line);
      if (!rec.is_object()) throw DataError("record is not a JSON object");
      std::string kind = require_string(rec, "kind");
      if (kind == "issue") {
        RawIssue issue;
        issue.project = require_string(rec, "project");
        issue.id = require_string(rec, "id");
        issue.title = require_string(rec, "title");
        issue.description = rec.contains("description") && rec["description"].is_string()
                                ? rec["description"].get<std::string>()
                                : std::string();
        issue.created_at = require_timestamp(rec, "created_at");
        issue.assignee = optional_string(rec, "assignee");
        issue.reporter = optional_string(rec, "reporter");
        result.issues.push_back(std::move(issue));
      } else if (kind == "comment") {
        RawComment comment;
        comment.project = require_string(rec, "project");
        comment.issue_id = require_string(rec, "issue_id");
        comment.id = require_string(rec, "id");
        comment.author = require_string(rec, "author");
        comment.body = require_string(rec, "body");
        comment.created_at = require_timestamp(rec, "created_at");
        result.comments.push_back(std::move(comment));
      } else {
        throw DataError("unknown record kind \"" + kind + "\"");
      }
    } catch (const json::exception& e) {
      result.errors.push_back({line_no, std::string("invalid JSON: ") + e.what()});
    } catch (const DataError& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  return result;
}

std::optional<int> Vocabulary::lookup(const std::string& term) const {
  auto it = index.find(term);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> docs, int no_below,
                            double no_above) {
  if (no_below < 0) throw DataError("no_below must be >= 0");
  if (!(no_above > 0.0) || no_above > 1.0) throw DataError("no_above must be in (0,1]");

  std::map<std::string, std::int64_t> df;
  for (const auto& tokens : docs) {
    std::set<std::string_view> seen(tokens.begin(), tokens.end());
    for (auto term : seen) df[std::string(term)] += 1;
  }

  Vocabulary vocab;
  vocab.no_below = no_below;
  vocab.no_above = no_above;
  vocab.total_documents = static_cast<std::int64_t>(docs.size());
  double cap = no_above * static_cast<double>(vocab.total_documents);
  for (auto& [term, count] : df) {
    if (count >= no_below && static_cast<double>(count) <= cap) {
      vocab.index.emplace(term, static_cast<int>(vocab.terms.size()));
      vocab.terms.push_back(term);
      vocab.document_frequency.push_back(count);
    } else {
      ++vocab.discarded_terms;
    }
  }
  if (vocab.terms.empty()) {
    throw NotAnalyzableError("vocabulary empty after df filtering (no_below=" +
                             std::to_string(no_below) + ", no_above=" + std::to_string(no_above) +
                             ")");
  }
  return vocab;
}

Document to_bow(std::string doc_id, DocKind kind, std::optional<std::string> author_or_assignee,
                UtcTime timestamp, std::span<const std::string> tokens, const Vocabulary& vocab) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.kind = kind;
  doc.author_or_assignee = std::move(author_or_assignee);
  doc.timestamp = timestamp;
  for (const auto& t : tokens) {
    if (auto idx = vocab.lookup(t)) {
      doc.tokens.push_back(*idx);
      doc.counts[*idx] += 1;
    }
  }
  return doc;
}

std::map<std::int32_t, double> to_tfidf(const Document& doc, const Vocabulary& vocab) {
  std::map<std::int32_t, double> weights;
  double n = static_cast<double>(vocab.total_documents);
  for (auto [idx, tf] : doc.counts) {
    double df = static_cast<double>(vocab.document_frequency[static_cast<std::size_t>(idx)]);
    double idf = df >= n ? 0.0 : std::log(n / df);
    weights[idx] = static_cast<double>(tf) * idf;
  }
  return weights;
}

std::vector<std::string> ProjectCorpus::tokens_of_issue(std::size_t i) const {
  std::vector<std::string> out;
  out.reserve(issue_terms[i].size());
  for (auto ref : issue_terms[i]) out.push_back(all_terms[static_cast<std::size_t>(ref)]);
  return out;
}

std::vector<std::string> ProjectCorpus::tokens_of_comment(std::size_t i) const {
  std::vector<std::string> out;
  out.reserve(comment_terms[i].size());
  for (auto ref : comment_terms[i]) out.push_back(all_terms[static_cast<std::size_t>(ref)]);
  return out;
}

std::vector<std::vector<std::string>> ProjectCorpus::token_streams(bool issues_only) const {
  std::vector<std::vector<std::string>> streams;
  streams.reserve(issues.size() + (issues_only ? 0 : comments.size()));
  for (std::size_t i = 0; i < issues.size(); ++i) streams.push_back(tokens_of_issue(i));
  if (!issues_only) {
    for (std::size_t i = 0; i < comments.size(); ++i) streams.push_back(tokens_of_comment(i));
  }
  return streams;
}

std::vector<ProjectCorpus> build_corpora(const ParseResult& parsed, const CorpusOptions& opt) {
  std::map<std::string, ProjectCorpus> by_project;
  for (const auto& issue : parsed.issues) by_project[issue.project].project = issue.project;
  for (const auto& comment : parsed.comments) by_project[comment.project].project = comment.project;

  for (const auto& issue : parsed.issues) by_project[issue.project].issues.push_back(issue);
  for (const auto& comment : parsed.comments) {
    RawComment c = comment;
    if (auto it = opt.aliases.find(c.author); it != opt.aliases.end()) c.author = it->second;
    by_project[c.project].comments.push_back(std::move(c));
  }

  std::vector<ProjectCorpus> corpora;
  corpora.reserve(by_project.size());
  for (auto& [key, corpus] : by_project) {
    corpus.no_below = opt.no_below;
    corpus.no_above = opt.no_above;

    auto by_created = [](const auto& a, const auto& b) {
      return std::tie(a.created_at.sec, a.id) < std::tie(b.created_at.sec, b.id);
    };
    std::sort(corpus.issues.begin(), corpus.issues.end(), by_created);
    std::sort(corpus.comments.begin(), corpus.comments.end(), by_created);

    // integrity: unique ids, comments must reference existing issues
    std::unordered_set<std::string> issue_ids;
    std::vector<RawIssue> issues_kept;
    for (auto& issue : corpus.issues) {
      if (!issue_ids.insert(issue.id).second) {
        corpus.record_errors.push_back({0, "duplicate issue id \"" + issue.id + "\""});
        continue;
      }
      issues_kept.push_back(std::move(issue));
    }
    corpus.issues = std::move(issues_kept);

    std::unordered_set<std::string> comment_ids;
    std::vector<RawComment> comments_kept;
    for (auto& comment : corpus.comments) {
      if (!comment_ids.insert(comment.id).second) {
        corpus.record_errors.push_back({0, "duplicate comment id \"" + comment.id + "\""});
        continue;
      }
      if (!issue_ids.contains(comment.issue_id)) {
        corpus.record_errors.push_back(
            {0, "comment \"" + comment.id + "\" references unknown issue \"" + comment.issue_id + "\""});
        continue;
      }
      comments_kept.push_back(std::move(comment));
    }
    corpus.comments = std::move(comments_kept);

    // preprocess; issues concatenate title + description
    std::map<std::string, std::int32_t> term_ids;
    auto intern = [&](const std::vector<std::string>& tokens) {
      std::vector<std::int32_t> refs;
      refs.reserve(tokens.size());
      for (const auto& t : tokens) {
        auto [it, inserted] = term_ids.emplace(t, static_cast<std::int32_t>(term_ids.size()));
        refs.push_back(it->second);
      }
      return refs;
    };
    std::vector<std::vector<std::int32_t>> issue_refs, comment_refs;
    for (const auto& issue : corpus.issues) {
      issue_refs.push_back(intern(preprocess(issue.title + " " + issue.description, opt.preprocess)));
    }
    for (const auto& comment : corpus.comments) {
      comment_refs.push_back(intern(preprocess(comment.body, opt.preprocess)));
    }

    // re-map interning order to sorted term order for a stable layout
    corpus.all_terms.resize(term_ids.size());
    std::vector<std::int32_t> remap(term_ids.size());
    std::int32_t next = 0;
    for (auto& [term, old_id] : term_ids) {
      corpus.all_terms[static_cast<std::size_t>(next)] = term;
      remap[static_cast<std::size_t>(old_id)] = next;
      ++next;
    }
    for (auto& refs : issue_refs)
      for (auto& r : refs) r = remap[static_cast<std::size_t>(r)];
    for (auto& refs : comment_refs)
      for (auto& r : refs) r = remap[static_cast<std::size_t>(r)];
    corpus.issue_terms = std::move(issue_refs);
    corpus.comment_terms = std::move(comment_refs);

    corpora.push_back(std::move(corpus));
  }
  return corpora;
}

VectorizedCorpus vectorize(const ProjectCorpus& corpus, bool issues_only_vocab) {
  VectorizedCorpus out;
  auto streams = corpus.token_streams(issues_only_vocab);
  out.vocab = build_vocabulary(streams, corpus.no_below, corpus.no_above);

  out.documents.reserve(corpus.issues.size() + corpus.comments.size());
  for (std::size_t i = 0; i < corpus.issues.size(); ++i) {
    const auto& issue = corpus.issues[i];
    out.documents.push_back(to_bow("i:" + issue.id, DocKind::Issue, issue.assignee,
                                   issue.created_at, corpus.tokens_of_issue(i), out.vocab));
  }
  for (std::size_t i = 0; i < corpus.comments.size(); ++i) {
    const auto& comment = corpus.comments[i];
    out.documents.push_back(to_bow("c:" + comment.id, DocKind::Comment, comment.author,
                                   comment.created_at, corpus.tokens_of_comment(i), out.vocab));
  }
  std::sort(out.documents.begin(), out.documents.end(),
            [](const Document& a, const Document& b) { return a.doc_id < b.doc_id; });
  return out;
}

std::string corpus_to_json(const ProjectCorpus& corpus) {
  json doc;
  doc["format"] = "conceptrealm-corpus";
  doc["version"] = 1;
  doc["project"] = corpus.project;
  doc["no_below"] = corpus.no_below;
  doc["no_above"] = corpus.no_above;
  doc["terms"] = corpus.all_terms;
  doc["issues"] = json::array();
  for (std::size_t i = 0; i < corpus.issues.size(); ++i) {
    const auto& issue = corpus.issues[i];
    json rec;
    rec["id"] = issue.id;
    rec["title"] = issue.title;
    rec["description"] = issue.description;
    rec["created_at"] = format_iso8601(issue.created_at);
    rec["assignee"] = issue.assignee ? json(*issue.assignee) : json(nullptr);
    rec["reporter"] = issue.reporter ? json(*issue.reporter) : json(nullptr);
    rec["terms"] = corpus.issue_terms[i];
    doc["issues"].push_back(std::move(rec));
  }
  doc["comments"] = json::array();
  for (std::size_t i = 0; i < corpus.comments.size(); ++i) {
    const auto& comment = corpus.comments[i];
    json rec;
    rec["id"] = comment.id;
    rec["issue_id"] = comment.issue_id;
    rec["author"] = comment.author;
    rec["body"] = comment.body;
    rec["created_at"] = format_iso8601(comment.created_at);
    rec["terms"] = corpus.comment_terms[i];
    doc["comments"].push_back(std::move(rec));
  }
  doc["record_errors"] = json::array();
  for (const auto& e : corpus.record_errors) {
    doc["record_errors"].push_back({{"line", e.line}, {"message", e.message}});
  }
  return doc.dump();
}

ProjectCorpus corpus_from_json(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::exception& e) {
    throw DataError(std::string("corpus JSON unreadable: ") + e.what());
  }
  if (doc.value("format", "") != "conceptrealm-corpus")
    throw DataError("corpus JSON: unrecognized format tag");
  if (doc.value("version", 0) != 1) throw DataError("corpus JSON: unsupported version");

  ProjectCorpus corpus;
  corpus.project = doc.at("project").get<std::string>();
  corpus.no_below = doc.at("no_below").get<int>();
  corpus.no_above = doc.at("no_above").get<double>();
  corpus.all_terms = doc.at("terms").get<std::vector<std::string>>();
  auto parse_ts = [](const json& rec) {
    auto ts = parse_iso8601(rec.at("created_at").get<std::string>());
    if (!ts) throw DataError("corpus JSON: bad timestamp");
    return *ts;
  };
  for (const auto& rec : doc.at("issues")) {
    RawIssue issue;
    issue.project = corpus.project;
    issue.id = rec.at("id").get<std::string>();
    issue.title = rec.at("title").get<std::string>();
    issue.description = rec.at("description").get<std::string>();
    issue.created_at = parse_ts(rec);
    if (!rec.at("assignee").is_null()) issue.assignee = rec["assignee"].get<std::string>();
    if (!rec.at("reporter").is_null()) issue.reporter = rec["reporter"].get<std::string>();
    corpus.issues.push_back(std::move(issue));
    corpus.issue_terms.push_back(rec.at("terms").get<std::vector<std::int32_t>>());
  }
  for (const auto& rec : doc.at("comments")) {
    RawComment comment;
    comment.project = corpus.project;
    comment.id = rec.at("id").get<std::string>();
    comment.issue_id = rec.at("issue_id").get<std::string>();
    comment.author = rec.at("author").get<std::string>();
    comment.body = rec.at("body").get<std::string>();
    comment.created_at = parse_ts(rec);
    corpus.comments.push_back(std::move(comment));
    corpus.comment_terms.push_back(rec.at("terms").get<std::vector<std::int32_t>>());
  }
  for (const auto& rec : doc.at("record_errors")) {
    corpus.record_errors.push_back(
        {rec.at("line").get<std::size_t>(), rec.at("message").get<std::string>()});
  }
  const auto n_terms = static_cast<std::int32_t>(corpus.all_terms.size());
  for (const auto& refs : corpus.issue_terms)
    for (auto r : refs)
      if (r < 0 || r >= n_terms) throw DataError("corpus JSON: term reference out of range");
  for (const auto& refs : corpus.comment_terms)
    for (auto r : refs)
      if (r < 0 || r >= n_terms) throw DataError("corpus JSON: term reference out of range");
  return corpus;
}

int project_age_years(const ProjectCorpus& corpus) {
  std::optional<UtcTime> first, last;
  auto update = [&](UtcTime t) {
    if (!first || t < *first) first = t;
    if (!last || *last < t) last = t;
  };
  for (const auto& issue : corpus.issues) update(issue.created_at);
  for (const auto& comment : corpus.comments) update(comment.created_at);
  if (!first) return 0;
  return whole_years_between(*first, *last);
}

int clamp_age_bracket(int age_years) { return std::clamp(age_years, 3, 10); }

}  // namespace conceptrealm
