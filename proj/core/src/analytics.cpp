#include "conceptrealm/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "conceptrealm/errors.hpp"
#include "conceptrealm/rng.hpp"

namespace conceptrealm {

namespace {

int argmax_tie_ascending(std::span<const double> values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)]) best = i;
  }
  return best;
}

int argmin_tie_ascending(std::span<const double> values) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i) {
    if (values[static_cast<std::size_t>(i)] < values[static_cast<std::size_t>(best)]) best = i;
  }
  return best;
}

}  // namespace

std::vector<int> alignment_eligible_years(const ProjectCorpus& corpus, int min_half_issues) {
  std::map<int, std::pair<int, int>> halves;  // year -> (h1, h2) issue counts
  for (const auto& issue : corpus.issues) {
    int y = year_of(issue.created_at);
    if (quarter_of(issue.created_at) <= 2) {
      halves[y].first += 1;
    } else {
      halves[y].second += 1;
    }
  }
  std::vector<int> years;
  for (auto& [y, counts] : halves) {
    if (counts.first >= min_half_issues && counts.second >= min_half_issues) years.push_back(y);
  }
  return years;
}

std::optional<AlignmentResult> evaluate_alignment(const ProjectCorpus& corpus, int year,
                                                  std::uint64_t seed,
                                                  const AlignmentOptions& opt) {
  TimeSpan h1 = half_year_span(year, 1);
  TimeSpan h2 = half_year_span(year, 2);

  std::vector<std::size_t> h1_issues, h2_issues, h1_comments;
  for (std::size_t i = 0; i < corpus.issues.size(); ++i) {
    UtcTime t = corpus.issues[i].created_at;
    if (h1.contains(t)) h1_issues.push_back(i);
    if (h2.contains(t)) h2_issues.push_back(i);
  }
  for (std::size_t i = 0; i < corpus.comments.size(); ++i) {
    if (h1.contains(corpus.comments[i].created_at)) h1_comments.push_back(i);
  }
  if (static_cast<int>(h1_issues.size()) < opt.min_half_issues ||
      static_cast<int>(h2_issues.size()) < opt.min_half_issues || h1_comments.empty()) {
    return std::nullopt;
  }

  // first-half vocabulary and documents
  std::vector<std::vector<std::string>> streams;
  streams.reserve(h1_issues.size() + h1_comments.size());
  for (auto i : h1_issues) streams.push_back(corpus.tokens_of_issue(i));
  for (auto i : h1_comments) streams.push_back(corpus.tokens_of_comment(i));
  Vocabulary vocab;
  try {
    vocab = build_vocabulary(streams, corpus.no_below, corpus.no_above);
  } catch (const NotAnalyzableError&) {
    return std::nullopt;
  }

  std::vector<Document> train_docs;
  train_docs.reserve(streams.size());
  for (auto i : h1_issues) {
    const auto& issue = corpus.issues[i];
    train_docs.push_back(to_bow("i:" + issue.id, DocKind::Issue, issue.assignee, issue.created_at,
                                corpus.tokens_of_issue(i), vocab));
  }
  std::vector<Document> comment_docs;
  comment_docs.reserve(h1_comments.size());
  for (auto i : h1_comments) {
    const auto& comment = corpus.comments[i];
    Document doc = to_bow("c:" + comment.id, DocKind::Comment, comment.author, comment.created_at,
                          corpus.tokens_of_comment(i), vocab);
    comment_docs.push_back(doc);
    train_docs.push_back(std::move(doc));
  }
  std::sort(train_docs.begin(), train_docs.end(),
            [](const Document& a, const Document& b) { return a.doc_id < b.doc_id; });

  std::set<std::int32_t> distinct;
  for (const auto& doc : train_docs) distinct.insert(doc.tokens.begin(), doc.tokens.end());
  if (distinct.empty()) return std::nullopt;
  int k = opt.k > 0 ? opt.k : 1;
  k = std::min<int>(k, static_cast<int>(distinct.size()));

  LdaModel model;
  try {
    model = train_lda(train_docs, k, opt.alpha, opt.beta, opt.train, derive_seed(seed, 1),
                      vocab.terms);
  } catch (const DataError&) {
    return std::nullopt;
  }

  // first-half comment realm for developer frequencies
  ConceptRealm h1_realm;
  h1_realm.project = corpus.project;
  h1_realm.k = model.k;
  for (const auto& doc : comment_docs) {
    RealmEntry entry;
    entry.id = doc.doc_id.substr(2);
    entry.dev = doc.author_or_assignee.value_or("");
    entry.ts = doc.timestamp;
    entry.weights = infer_document(model, doc, opt.fold_in_iterations, derive_seed(seed, 2));
    h1_realm.comments.push_back(std::move(entry));
  }

  std::vector<std::string> devs = active_developers(h1_realm, h1);
  std::unordered_map<std::string, std::vector<double>> dev_freq;
  for (const auto& dev : devs) {
    dev_freq.emplace(dev, developer_frequency(h1_realm, dev, h1)->values);
  }

  std::string most_active;
  int most_comments = -1;
  for (const auto& dev : devs) {
    int n = count_comments(h1_realm, dev, h1);
    if (n > most_comments) {
      most_comments = n;
      most_active = dev;
    }
  }

  std::vector<double> assignee_scores, active_scores;
  int hits = 0;
  for (auto i : h2_issues) {
    const auto& issue = corpus.issues[i];
    if (!issue.assignee) continue;
    Document doc = to_bow("i:" + issue.id, DocKind::Issue, issue.assignee, issue.created_at,
                          corpus.tokens_of_issue(i), vocab);
    std::vector<double> weights = infer_document(model, doc, opt.fold_in_iterations,
                                                 derive_seed(seed, 3));
    int concept_id = argmax_tie_ascending(weights);

    auto score_of = [&](const std::string& dev) {
      auto it = dev_freq.find(dev);
      return it == dev_freq.end() ? 0.0 : it->second[static_cast<std::size_t>(concept_id)];
    };
    assignee_scores.push_back(score_of(*issue.assignee));
    active_scores.push_back(score_of(most_active));

    // rank developers at this concept (frequency descending, id ascending)
    std::vector<std::string> ranked = devs;
    std::sort(ranked.begin(), ranked.end(), [&](const std::string& a, const std::string& b) {
      double fa = dev_freq.at(a)[static_cast<std::size_t>(concept_id)];
      double fb = dev_freq.at(b)[static_cast<std::size_t>(concept_id)];
      if (fa != fb) return fa > fb;
      return a < b;
    });
    for (int r = 0; r < std::min<int>(opt.top_n, static_cast<int>(ranked.size())); ++r) {
      if (ranked[static_cast<std::size_t>(r)] == *issue.assignee) {
        ++hits;
        break;
      }
    }
  }
  if (assignee_scores.size() < 2) return std::nullopt;

  AlignmentResult result;
  result.project = corpus.project;
  result.year = year;
  result.n_test_issues = static_cast<int>(assignee_scores.size());
  result.mean_assignee_score = mean(assignee_scores);
  result.mean_active_score = mean(active_scores);
  result.mean_diff = result.mean_assignee_score - result.mean_active_score;
  result.accuracy = static_cast<double>(hits) / static_cast<double>(assignee_scores.size());
  TTestResult tt = paired_t_test(assignee_scores, active_scores);
  result.t_statistic = tt.t;
  result.degrees_of_freedom = tt.df;
  result.p_value = tt.p_value;
  result.degenerate_variance = tt.degenerate_variance;
  return result;
}

std::optional<double> concept_volatility(const ConceptRealm& realm) {
  std::vector<std::vector<double>> yearly;
  for (int y : realm.years()) {
    if (auto f = issue_frequency(realm, year_span(y))) yearly.push_back(f->values);
  }
  if (yearly.size() < 3) return std::nullopt;
  std::vector<double> variances;
  variances.reserve(static_cast<std::size_t>(realm.k));
  for (int c = 0; c < realm.k; ++c) {
    std::vector<double> deltas;
    for (std::size_t i = 1; i < yearly.size(); ++i) {
      deltas.push_back(yearly[i][static_cast<std::size_t>(c)] -
                       yearly[i - 1][static_cast<std::size_t>(c)]);
    }
    variances.push_back(population_variance(deltas));
  }
  return percentile(std::move(variances), 0.75);
}

std::optional<double> issue_comment_mse(const ConceptRealm& realm, TimeSpan span,
                                        const std::string& label) {
  auto issue_f = issue_frequency(realm, span, label);
  if (!issue_f) return std::nullopt;
  std::vector<std::string> devs = active_developers(realm, span);
  if (devs.empty()) return std::nullopt;
  double total = 0.0;
  for (const auto& dev : devs) {
    auto dev_f = developer_frequency(realm, dev, span, label);
    double se = 0.0;
    for (int c = 0; c < realm.k; ++c) {
      double d = issue_f->values[static_cast<std::size_t>(c)] -
                 dev_f->values[static_cast<std::size_t>(c)];
      se += d * d;
    }
    total += se / static_cast<double>(realm.k);
  }
  return total / static_cast<double>(devs.size());
}

std::optional<KeeperCount> count_keepers(const ConceptRealm& realm, int year, double threshold) {
  if (!(threshold > 0.0) || threshold > 1.0)
    throw DataError("count_keepers: threshold must be in (0,1]");
  TimeSpan span = year_span(year);
  auto freq = issue_frequency(realm, span);
  if (!freq) return std::nullopt;
  int concept_id = argmax_tie_ascending(freq->values);

  std::vector<std::string> devs = active_developers(realm, span);
  if (devs.empty()) return std::nullopt;
  std::vector<std::pair<std::string, double>> shares;
  double total = 0.0;
  for (const auto& dev : devs) {
    double acf = absolute_frequency(realm, dev, span).values[static_cast<std::size_t>(concept_id)];
    shares.emplace_back(dev, acf);
    total += acf;
  }
  if (total <= 0.0) return std::nullopt;
  std::sort(shares.begin(), shares.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  KeeperCount out;
  out.project = realm.project;
  out.year = year;
  out.concept_id = concept_id;
  out.threshold = threshold;
  double cumulative = 0.0;
  for (const auto& [dev, share] : shares) {
    cumulative += share / total;
    ++out.count;
    if (cumulative >= threshold) break;
  }
  return out;
}

QuarterlyCounts quarterly_comment_counts(const ConceptRealm& realm) {
  QuarterlyCounts counts;
  for (const auto& e : realm.comments) counts[e.dev][quarter_index(e.ts)] += 1;
  return counts;
}

namespace {

int count_at(const std::map<std::int64_t, int>& counts, std::int64_t q) {
  auto it = counts.find(q);
  return it == counts.end() ? 0 : it->second;
}

}  // namespace

std::vector<LeaverEvent> detect_leavers(const QuarterlyCounts& counts, double threshold) {
  if (!(threshold > 0.0) || threshold >= 1.0)
    throw DataError("detect_leavers: threshold must be in (0,1)");
  std::optional<std::int64_t> first, last;
  for (const auto& [dev, per_quarter] : counts) {
    for (const auto& [q, n] : per_quarter) {
      if (n <= 0) continue;
      if (!first || q < *first) first = q;
      if (!last || q > *last) last = q;
    }
  }
  std::vector<LeaverEvent> events;
  if (!first || *last - *first + 1 < 8) return events;

  for (const auto& [dev, per_quarter] : counts) {
    for (std::int64_t t = *first + 4; t + 3 <= *last; ++t) {
      double trailing = 0.0;
      for (std::int64_t q = t - 4; q < t; ++q) trailing += count_at(per_quarter, q);
      trailing /= 4.0;
      if (!(trailing > 0.0)) continue;
      double cutoff = threshold * trailing;
      bool left = true;
      for (std::int64_t q = t; q <= t + 3; ++q) {
        if (static_cast<double>(count_at(per_quarter, q)) >= cutoff) {
          left = false;
          break;
        }
      }
      if (left) {
        LeaverEvent event;
        event.developer = dev;
        event.departure_quarter = t;
        event.trailing_avg = trailing;
        event.comment_rank = comment_rank(counts, dev, t).value_or(0);
        events.push_back(std::move(event));
        break;  // earliest qualifying quarter only
      }
    }
  }
  return events;
}

std::vector<LeaverEvent> detect_leavers(const ConceptRealm& realm, double threshold) {
  auto events = detect_leavers(quarterly_comment_counts(realm), threshold);
  for (auto& e : events) e.project = realm.project;
  return events;
}

std::optional<int> comment_rank(const QuarterlyCounts& counts, const std::string& developer,
                                std::int64_t q_t) {
  std::map<std::string, int> window_counts;
  for (const auto& [dev, per_quarter] : counts) {
    int n = 0;
    for (std::int64_t q = q_t - 4; q < q_t; ++q) n += count_at(per_quarter, q);
    if (n > 0) window_counts[dev] = n;
  }
  auto it = window_counts.find(developer);
  if (it == window_counts.end()) return std::nullopt;
  // dense rank: 1 + number of distinct counts above this developer's
  std::set<int, std::greater<>> distinct;
  for (const auto& [dev, n] : window_counts) distinct.insert(n);
  int rank = 1;
  for (int n : distinct) {
    if (n == it->second) return rank;
    ++rank;
  }
  return rank;
}

namespace {

std::string quadrant_label(double diff, double median_diff) {
  if (diff < 0.0) return diff < median_diff ? "negative-over" : "negative-under";
  return diff > median_diff ? "positive-over" : "positive-under";
}

}  // namespace

TurnoverImpact turnover_impact(const ConceptRealm& realm, const LeaverEvent& leaver) {
  TimeSpan pre = quarter_range_span(leaver.departure_quarter - 4, 4);
  TimeSpan post = quarter_range_span(leaver.departure_quarter, 4);

  AbsoluteFrequency leaver_pre = absolute_frequency(realm, leaver.developer, pre);
  if (leaver_pre.n == 0)
    throw DataError("turnover_impact: leaver \"" + leaver.developer +
                    "\" has no pre-departure comments");

  AbsoluteFrequency team_pre = absolute_frequency(realm, std::nullopt, pre);
  AbsoluteFrequency team_post = absolute_frequency(realm, std::nullopt, post);

  TurnoverImpact impact;
  impact.leaver = leaver;
  impact.diff.resize(static_cast<std::size_t>(realm.k));
  for (int c = 0; c < realm.k; ++c) {
    impact.diff[static_cast<std::size_t>(c)] = team_post.values[static_cast<std::size_t>(c)] -
                                               team_pre.values[static_cast<std::size_t>(c)];
  }
  impact.strongest_concept = argmax_tie_ascending(leaver_pre.values);
  impact.weakest_concept = argmin_tie_ascending(leaver_pre.values);
  impact.diff_strongest = impact.diff[static_cast<std::size_t>(impact.strongest_concept)];
  impact.diff_weakest = impact.diff[static_cast<std::size_t>(impact.weakest_concept)];
  impact.median_diff = median(impact.diff);
  impact.quadrant_strongest = quadrant_label(impact.diff_strongest, impact.median_diff);
  impact.quadrant_weakest = quadrant_label(impact.diff_weakest, impact.median_diff);
  return impact;
}

std::optional<double> distribution_entropy(const ConceptRealm& realm, int concept_id, TimeSpan span,
                                           int top_k) {
  if (concept_id < 0 || concept_id >= realm.k)
    throw DataError("distribution_entropy: concept outside [0, K)");
  if (top_k < 1) throw DataError("distribution_entropy: top_k must be >= 1");
  std::vector<double> shares;
  for (const auto& dev : active_developers(realm, span)) {
    double acf = absolute_frequency(realm, dev, span).values[static_cast<std::size_t>(concept_id)];
    if (acf > 0.0) shares.push_back(acf);
  }
  if (shares.empty()) return std::nullopt;
  int active_count = static_cast<int>(shares.size());
  return normalized_top_entropy(std::move(shares), active_count, top_k);
}

std::optional<int> project_top_concept(const ConceptRealm& realm) {
  auto freq = issue_frequency(realm, realm.full_span());
  if (!freq) return std::nullopt;
  return argmax_tie_ascending(freq->values);
}

std::optional<double> project_gap(const ConceptRealm& realm) {
  auto top = project_top_concept(realm);
  if (!top) return std::nullopt;
  TimeSpan span = realm.full_span();
  std::vector<double> shares;
  double total = 0.0;
  for (const auto& dev : active_developers(realm, span)) {
    double acf = absolute_frequency(realm, dev, span).values[static_cast<std::size_t>(*top)];
    shares.push_back(acf);
    total += acf;
  }
  if (shares.empty() || total <= 0.0) return std::nullopt;
  for (double& s : shares) s /= total;
  double max_share = *std::max_element(shares.begin(), shares.end());
  return max_share - median(std::move(shares));
}

std::string to_string(SplitLabel label) {
  switch (label) {
    case SplitLabel::Equal: return "Equal";
    case SplitLabel::Unequal: return "Unequal";
    default: return "Neither";
  }
}

std::vector<SplitLabel> split_projects(std::span<const double> gaps, double margin) {
  std::vector<SplitLabel> labels(gaps.size(), SplitLabel::Neither);
  if (gaps.size() < 2) return labels;
  double med = median(std::vector<double>(gaps.begin(), gaps.end()));
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (gaps[i] > med + margin) {
      labels[i] = SplitLabel::Unequal;
    } else if (gaps[i] < med - margin) {
      labels[i] = SplitLabel::Equal;
    }
  }
  return labels;
}

std::optional<double> mean_reciprocal_rank(
    std::span<const std::pair<std::string, std::string>> assignments, const ConceptRealm& realm,
    TimeSpan span) {
  if (assignments.empty()) return std::nullopt;

  std::unordered_map<std::string, const RealmEntry*> issue_by_id;
  for (const auto& e : realm.issues) issue_by_id.emplace(e.id, &e);

  std::vector<std::string> devs = active_developers(realm, span);
  std::unordered_map<std::string, std::vector<double>> dev_freq;
  for (const auto& dev : devs) {
    dev_freq.emplace(dev, developer_frequency(realm, dev, span)->values);
  }

  std::map<int, std::unordered_map<std::string, int>> rank_cache;
  auto ranks_for = [&](int concept_id) -> const std::unordered_map<std::string, int>& {
    auto it = rank_cache.find(concept_id);
    if (it != rank_cache.end()) return it->second;
    std::vector<std::string> ranked = devs;
    std::sort(ranked.begin(), ranked.end(), [&](const std::string& a, const std::string& b) {
      double fa = dev_freq.at(a)[static_cast<std::size_t>(concept_id)];
      double fb = dev_freq.at(b)[static_cast<std::size_t>(concept_id)];
      if (fa != fb) return fa > fb;
      return a < b;
    });
    std::unordered_map<std::string, int> positions;
    for (std::size_t i = 0; i < ranked.size(); ++i)
      positions.emplace(ranked[i], static_cast<int>(i) + 1);
    return rank_cache.emplace(concept_id, std::move(positions)).first->second;
  };

  double sum = 0.0;
  for (const auto& [issue_id, assignee] : assignments) {
    auto it = issue_by_id.find(issue_id);
    if (it == issue_by_id.end())
      throw DataError("mean_reciprocal_rank: issue \"" + issue_id + "\" not in realm");
    int concept_id = argmax_tie_ascending(it->second->weights);
    const auto& positions = ranks_for(concept_id);
    auto pos = positions.find(assignee);
    if (pos != positions.end()) sum += 1.0 / static_cast<double>(pos->second);
  }
  return sum / static_cast<double>(assignments.size());
}

}  // namespace conceptrealm
