#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conceptrealm/lda.hpp"

namespace conceptrealm {

enum class Windowing { Yearly, Quarterly };

struct RealmEntry {
  std::string id;   // raw issue/comment id
  std::string dev;  // comment author, or issue assignee ("" if none)
  UtcTime ts;
  std::vector<double> weights;  // length K, sums to 1
};

// Per-project association of issues and developer comments with concept
// weight vectors, plus the calendar windowing used for reports.
struct ConceptRealm {
  std::string project;
  int k = 0;
  std::string model_hash;
  Windowing windowing = Windowing::Yearly;
  std::vector<RealmEntry> issues;    // sorted by id
  std::vector<RealmEntry> comments;  // sorted by id

  TimeSpan full_span() const;        // [first activity, last activity]
  std::vector<int> years() const;    // calendar years intersecting the span
  std::vector<std::int64_t> quarter_indices() const;
};

struct RealmBuildOptions {
  Windowing windowing = Windowing::Yearly;
  int fold_in_iterations = 100;
  std::uint64_t seed = 0;
  // Documents created before this point are rejected into the report.
  std::optional<UtcTime> project_start;
};

struct RealmBuildReport {
  std::vector<std::pair<std::string, std::string>> rejected;  // (doc_id, reason)
};

ConceptRealm build_realm(const ProjectCorpus& corpus, const VectorizedCorpus& vectorized,
                         const LdaModel& model, const RealmBuildOptions& opt,
                         RealmBuildReport* report = nullptr);

enum class FrequencyScope { TeamIssueLevel, Developer };

// Eq-style scaled frequency: per concept, (sum of weights / n) * K, so the
// whole vector sums to K and 1.0 means "average share".
struct FrequencyVector {
  FrequencyScope scope = FrequencyScope::TeamIssueLevel;
  std::string developer;  // set for Developer scope
  std::string window_label;
  std::vector<double> values;
  int n = 0;  // documents aggregated
};

// Absent (nullopt) when the window holds no issues.
std::optional<FrequencyVector> issue_frequency(const ConceptRealm& realm, TimeSpan span,
                                               const std::string& window_label = "");

// Absent when the developer has no comments in the window.
std::optional<FrequencyVector> developer_frequency(const ConceptRealm& realm,
                                                   const std::string& developer, TimeSpan span,
                                                   const std::string& window_label = "");

// Unscaled sum of comment weights per concept; zero vector when empty.
// `developer` nullopt means team-wide.
struct AbsoluteFrequency {
  std::vector<double> values;
  int n = 0;  // comments aggregated
};
AbsoluteFrequency absolute_frequency(const ConceptRealm& realm,
                                     const std::optional<std::string>& developer, TimeSpan span);

// Developers with at least one comment in the span, ascending.
std::vector<std::string> active_developers(const ConceptRealm& realm, TimeSpan span);
int count_comments(const ConceptRealm& realm, const std::string& developer, TimeSpan span);

// JSON Lines: one header record (project, K, model hash, windowing), then
// one record per document sorted issues-then-comments by id.
std::string realm_to_jsonl(const ConceptRealm& realm);
ConceptRealm realm_from_jsonl(const std::string& bytes);

}  // namespace conceptrealm
