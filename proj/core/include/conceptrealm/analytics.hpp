#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conceptrealm/realm.hpp"
#include "conceptrealm/stats.hpp"

namespace conceptrealm {

// ---- alignment (does concept familiarity predict the assignee?) ----

struct AlignmentOptions {
  int min_half_issues = 10;
  int top_n = 1;       // assignee within top-n ranked developers counts as a hit
  int k = 0;           // 0 -> caller supplies the project's chosen K
  double alpha = 0.0;  // <= 0 -> 50/K
  double beta = 0.01;
  TrainConfig train;
  int fold_in_iterations = 100;
  int no_below = 15;
  double no_above = 0.5;
};

struct AlignmentResult {
  std::string project;
  int year = 0;
  int n_test_issues = 0;
  double mean_assignee_score = 0.0;
  double mean_active_score = 0.0;
  double mean_diff = 0.0;  // mean_assignee_score - mean_active_score
  double accuracy = 0.0;
  double t_statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  bool degenerate_variance = false;
};

// Splits the chosen year at July 1st, trains a fresh model on the first
// half (issues + comments), folds in the second half's assigned issues and
// compares the assignee's first-half concept frequency against the most
// active developer's. Absent when either half is below the issue floor or
// the first-half vocabulary is empty.
std::optional<AlignmentResult> evaluate_alignment(const ProjectCorpus& corpus, int year,
                                                  std::uint64_t seed,
                                                  const AlignmentOptions& opt);

// Years of the corpus eligible for the alignment experiment.
std::vector<int> alignment_eligible_years(const ProjectCorpus& corpus, int min_half_issues);

// ---- volatility / alignment-over-time (yearly windows) ----

// 75th percentile across concepts of the population variance of
// year-to-year issue-frequency deltas; absent with fewer than three yearly
// windows containing issues.
std::optional<double> concept_volatility(const ConceptRealm& realm);

// Mean over active developers of the per-developer MSE between the
// window's issue-level and developer-level frequency vectors.
std::optional<double> issue_comment_mse(const ConceptRealm& realm, TimeSpan span,
                                        const std::string& label = "");

// ---- keepers ----

struct KeeperCount {
  std::string project;
  int year = 0;
  int concept_id = 0;  // most important issue-level concept of the year
  double threshold = 0.5;
  int count = 0;
};

// Developers sorted by their normalized share of the year's top concept;
// count is the shortest prefix reaching the threshold. Absent when the
// year has no issues or no comments.
std::optional<KeeperCount> count_keepers(const ConceptRealm& realm, int year,
                                         double threshold = 0.5);

// ---- leavers and turnover impact ----

using QuarterlyCounts = std::map<std::string, std::map<std::int64_t, int>>;

QuarterlyCounts quarterly_comment_counts(const ConceptRealm& realm);

struct LeaverEvent {
  std::string developer;
  std::string project;
  std::int64_t departure_quarter = 0;  // quarter_index of q_t
  double trailing_avg = 0.0;           // mean comment count over q_{t-4}..q_{t-1}
  int comment_rank = 0;                // dense rank by comments over those quarters
};

// A developer leaves at q_t when each of q_t..q_{t+3} has fewer comments
// than 10% of the q_{t-4}..q_{t-1} average (which must be positive) and
// the whole 8-quarter window lies inside the observed range. Earliest
// qualifying quarter per developer.
std::vector<LeaverEvent> detect_leavers(const QuarterlyCounts& counts, double threshold = 0.10);
std::vector<LeaverEvent> detect_leavers(const ConceptRealm& realm, double threshold = 0.10);

// 1-based dense rank (ties share the smaller rank) by descending comment
// count over the four quarters before q_t; absent for inactive developers.
std::optional<int> comment_rank(const QuarterlyCounts& counts, const std::string& developer,
                                std::int64_t q_t);

struct TurnoverImpact {
  LeaverEvent leaver;
  int strongest_concept = 0;  // argmax of the leaver's pre-window acf
  int weakest_concept = 0;    // argmin, ties to the smaller concept id
  double diff_strongest = 0.0;
  double diff_weakest = 0.0;
  double median_diff = 0.0;
  std::vector<double> diff;  // per concept: acf_post - acf_pre (team-wide)
  std::string quadrant_strongest;
  std::string quadrant_weakest;
};

// Team acf over the four quarters before and after departure. Throws
// DataError for a leaver with no pre-window comments.
TurnoverImpact turnover_impact(const ConceptRealm& realm, const LeaverEvent& leaver);

// ---- distribution entropy and project split ----

// Normalized entropy of the top-k developers' acf shares for one concept.
// Absent when nobody has positive acf in the window.
std::optional<double> distribution_entropy(const ConceptRealm& realm, int concept_id, TimeSpan span,
                                           int top_k = 5);

// gap = max - median of the normalized developer shares of the project's
// most frequent concept over the full project span.
std::optional<double> project_gap(const ConceptRealm& realm);

// Most frequent issue-level concept over the full span (ties ascending).
std::optional<int> project_top_concept(const ConceptRealm& realm);

enum class SplitLabel { Equal, Unequal, Neither };
std::string to_string(SplitLabel label);

// Cross-project labeling: Unequal above median+margin, Equal below
// median-margin, Neither otherwise (and always with fewer than 2 projects).
std::vector<SplitLabel> split_projects(std::span<const double> gaps, double margin = 0.01);

// ---- mean reciprocal rank ----

// assignments: (issue id, assignee). Rank developers by developer-level
// frequency at each issue's strongest concept (descending, ties by id);
// unranked assignees contribute 0. Absent on an empty assignment list.
std::optional<double> mean_reciprocal_rank(
    std::span<const std::pair<std::string, std::string>> assignments, const ConceptRealm& realm,
    TimeSpan span);

}  // namespace conceptrealm
