#include "conceptrealm/realm.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "conceptrealm/errors.hpp"

namespace conceptrealm {

using nlohmann::json;

TimeSpan ConceptRealm::full_span() const {
  std::optional<UtcTime> first, last;
  auto update = [&](UtcTime t) {
    if (!first || t < *first) first = t;
    if (!last || *last < t) last = t;
  };
  for (const auto& e : issues) update(e.ts);
  for (const auto& e : comments) update(e.ts);
  if (!first) return {0, 0};
  return {first->sec, last->sec + 1};
}

std::vector<int> ConceptRealm::years() const {
  if (issues.empty() && comments.empty()) return {};
  TimeSpan span = full_span();
  int first = year_of(UtcTime{span.begin});
  int last = year_of(UtcTime{span.end - 1});
  std::vector<int> out;
  for (int y = first; y <= last; ++y) out.push_back(y);
  return out;
}

std::vector<std::int64_t> ConceptRealm::quarter_indices() const {
  if (issues.empty() && comments.empty()) return {};
  TimeSpan span = full_span();
  std::int64_t first = quarter_index(UtcTime{span.begin});
  std::int64_t last = quarter_index(UtcTime{span.end - 1});
  std::vector<std::int64_t> out;
  for (std::int64_t q = first; q <= last; ++q) out.push_back(q);
  return out;
}

ConceptRealm build_realm(const ProjectCorpus& corpus, const VectorizedCorpus& vectorized,
                         const LdaModel& model, const RealmBuildOptions& opt,
                         RealmBuildReport* report) {
  ConceptRealm realm;
  realm.project = corpus.project;
  realm.k = model.k;
  realm.model_hash = model_hash(model);
  realm.windowing = opt.windowing;

  for (const auto& doc : vectorized.documents) {
    if (opt.project_start && doc.timestamp < *opt.project_start) {
      if (report) report->rejected.emplace_back(doc.doc_id, "created before project start");
      continue;
    }
    RealmEntry entry;
    entry.id = doc.doc_id.substr(2);  // strip the "i:"/"c:" prefix
    entry.dev = doc.author_or_assignee.value_or("");
    entry.ts = doc.timestamp;
    entry.weights = infer_document(model, doc, opt.fold_in_iterations, opt.seed);
    if (doc.kind == DocKind::Issue) {
      realm.issues.push_back(std::move(entry));
    } else {
      realm.comments.push_back(std::move(entry));
    }
  }
  auto by_id = [](const RealmEntry& a, const RealmEntry& b) { return a.id < b.id; };
  std::sort(realm.issues.begin(), realm.issues.end(), by_id);
  std::sort(realm.comments.begin(), realm.comments.end(), by_id);
  return realm;
}

namespace {

std::optional<FrequencyVector> scaled_frequency(const ConceptRealm& realm,
                                                std::span<const RealmEntry> entries,
                                                FrequencyScope scope, const std::string& dev,
                                                TimeSpan span, const std::string& label) {
  std::vector<double> sum(static_cast<std::size_t>(realm.k), 0.0);
  int n = 0;
  for (const auto& e : entries) {
    if (!span.contains(e.ts)) continue;
    if (scope == FrequencyScope::Developer && e.dev != dev) continue;
    for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += e.weights[c];
    ++n;
  }
  if (n == 0) return std::nullopt;
  FrequencyVector out;
  out.scope = scope;
  out.developer = dev;
  out.window_label = label;
  out.n = n;
  out.values.resize(sum.size());
  double k = static_cast<double>(realm.k);
  for (std::size_t c = 0; c < sum.size(); ++c)
    out.values[c] = sum[c] / static_cast<double>(n) * k;
  return out;
}

}  // namespace

std::optional<FrequencyVector> issue_frequency(const ConceptRealm& realm, TimeSpan span,
                                               const std::string& window_label) {
  return scaled_frequency(realm, realm.issues, FrequencyScope::TeamIssueLevel, "", span,
                          window_label);
}

std::optional<FrequencyVector> developer_frequency(const ConceptRealm& realm,
                                                   const std::string& developer, TimeSpan span,
                                                   const std::string& window_label) {
  return scaled_frequency(realm, realm.comments, FrequencyScope::Developer, developer, span,
                          window_label);
}

AbsoluteFrequency absolute_frequency(const ConceptRealm& realm,
                                     const std::optional<std::string>& developer, TimeSpan span) {
  AbsoluteFrequency out;
  out.values.assign(static_cast<std::size_t>(realm.k), 0.0);
  for (const auto& e : realm.comments) {
    if (!span.contains(e.ts)) continue;
    if (developer && e.dev != *developer) continue;
    for (std::size_t c = 0; c < out.values.size(); ++c) out.values[c] += e.weights[c];
    ++out.n;
  }
  return out;
}

std::vector<std::string> active_developers(const ConceptRealm& realm, TimeSpan span) {
  std::set<std::string> devs;
  for (const auto& e : realm.comments) {
    if (span.contains(e.ts)) devs.insert(e.dev);
  }
  return {devs.begin(), devs.end()};
}

int count_comments(const ConceptRealm& realm, const std::string& developer, TimeSpan span) {
  int n = 0;
  for (const auto& e : realm.comments) {
    if (span.contains(e.ts) && e.dev == developer) ++n;
  }
  return n;
}

std::string realm_to_jsonl(const ConceptRealm& realm) {
  std::string out;
  json header;
  header["project"] = realm.project;
  header["k"] = realm.k;
  header["model_hash"] = realm.model_hash;
  header["windowing"] = realm.windowing == Windowing::Yearly ? "yearly" : "quarterly";
  out += header.dump();
  out += "\n";
  auto emit = [&](const RealmEntry& e, const char* kind) {
    json rec;
    rec["doc"] = e.id;
    rec["kind"] = kind;
    if (e.dev.empty()) {
      rec["dev"] = nullptr;
    } else {
      rec["dev"] = e.dev;
    }
    rec["ts"] = format_iso8601(e.ts);
    rec["weights"] = e.weights;
    out += rec.dump();
    out += "\n";
  };
  for (const auto& e : realm.issues) emit(e, "issue");
  for (const auto& e : realm.comments) emit(e, "comment");
  return out;
}

ConceptRealm realm_from_jsonl(const std::string& bytes) {
  ConceptRealm realm;
  std::size_t pos = 0;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (pos < bytes.size()) {
    std::size_t eol = bytes.find('\n', pos);
    if (eol == std::string::npos) eol = bytes.size();
    std::string_view line(bytes.data() + pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError("realm line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!header_seen) {
      realm.project = rec.at("project").get<std::string>();
      realm.k = rec.at("k").get<int>();
      realm.model_hash = rec.at("model_hash").get<std::string>();
      realm.windowing =
          rec.value("windowing", "yearly") == "quarterly" ? Windowing::Quarterly : Windowing::Yearly;
      header_seen = true;
      continue;
    }
    RealmEntry entry;
    entry.id = rec.at("doc").get<std::string>();
    if (rec.contains("dev") && !rec["dev"].is_null()) entry.dev = rec["dev"].get<std::string>();
    auto ts = parse_iso8601(rec.at("ts").get<std::string>());
    if (!ts) throw DataError("realm line " + std::to_string(line_no) + ": bad timestamp");
    entry.ts = *ts;
    entry.weights = rec.at("weights").get<std::vector<double>>();
    if (static_cast<int>(entry.weights.size()) != realm.k)
      throw DataError("realm line " + std::to_string(line_no) + ": weight vector length != k");
    if (rec.at("kind").get<std::string>() == "issue") {
      realm.issues.push_back(std::move(entry));
    } else {
      realm.comments.push_back(std::move(entry));
    }
  }
  if (!header_seen) throw DataError("realm file has no header record");
  return realm;
}

}  // namespace conceptrealm
