#include "conceptrealm/synth.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "conceptrealm/errors.hpp"
#include "conceptrealm/rng.hpp"
#include "conceptrealm/timeutil.hpp"

namespace conceptrealm {

using nlohmann::json;

namespace {

// Nonsense words chosen to survive the preprocessing pipeline untouched:
// pure lowercase letters, not stopwords, fixed points of the stemmer.
std::string support_term(int topic, int word) {
  std::string t = "z";
  t.push_back(static_cast<char>('a' + topic));
  t.push_back('q');
  t.push_back(static_cast<char>('a' + word / 26));
  t.push_back(static_cast<char>('a' + word % 26));
  t.push_back('x');
  return t;
}

std::vector<std::string> term_pool(int topic, int count) {
  std::vector<std::string> pool;
  pool.reserve(static_cast<std::size_t>(count));
  for (int w = 0; w < count; ++w) pool.push_back(support_term(topic, w));
  return pool;
}

std::string sentence(const std::vector<std::string>& pool, int n_tokens, SplitMix64& rng) {
  std::string out;
  for (int i = 0; i < n_tokens; ++i) {
    if (i > 0) out.push_back(' ');
    out += pool[rng.next_below(static_cast<std::uint32_t>(pool.size()))];
  }
  return out;
}

class JsonlBuilder {
 public:
  void issue(const std::string& project, const std::string& id, const std::string& title,
             const std::string& description, UtcTime ts, const std::string& assignee = "",
             const std::string& reporter = "") {
    json rec;
    rec["kind"] = "issue";
    rec["project"] = project;
    rec["id"] = id;
    rec["title"] = title;
    rec["description"] = description;
    rec["created_at"] = format_iso8601(ts);
    if (assignee.empty()) {
      rec["assignee"] = nullptr;
    } else {
      rec["assignee"] = assignee;
    }
    if (reporter.empty()) {
      rec["reporter"] = nullptr;
    } else {
      rec["reporter"] = reporter;
    }
    out_ += rec.dump();
    out_ += "\n";
  }

  void comment(const std::string& project, const std::string& issue_id, const std::string& id,
               const std::string& author, const std::string& body, UtcTime ts) {
    json rec;
    rec["kind"] = "comment";
    rec["project"] = project;
    rec["issue_id"] = issue_id;
    rec["id"] = id;
    rec["author"] = author;
    rec["body"] = body;
    rec["created_at"] = format_iso8601(ts);
    out_ += rec.dump();
    out_ += "\n";
  }

  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

}  // namespace

std::vector<std::vector<std::string>> synth_topic_supports(const SynthTopicsOptions& opt) {
  std::vector<std::vector<std::string>> supports;
  supports.reserve(static_cast<std::size_t>(opt.topics));
  for (int t = 0; t < opt.topics; ++t) supports.push_back(term_pool(t, opt.support));
  return supports;
}

std::string synth_topics(const SynthTopicsOptions& opt) {
  if (opt.topics < 1 || opt.docs < 1 || opt.tokens_per_doc < 1 || opt.support < 1)
    throw DataError("synth_topics: all counts must be >= 1");
  auto supports = synth_topic_supports(opt);
  SplitMix64 rng(derive_seed(opt.seed, fnv1a64("topics")));
  JsonlBuilder builder;
  std::int64_t start = year_span(2020).begin;
  for (int i = 0; i < opt.docs; ++i) {
    int topic = i % opt.topics;
    std::string text = sentence(supports[static_cast<std::size_t>(topic)], opt.tokens_per_doc, rng);
    std::size_t split = text.find(' ', text.size() / 4);
    std::string title = split == std::string::npos ? text : text.substr(0, split);
    std::string description = split == std::string::npos ? "" : text.substr(split + 1);
    UtcTime ts{start + static_cast<std::int64_t>(i) * 157000};
    builder.issue(opt.project, "T-" + std::to_string(i + 1), title, description, ts);
  }
  return builder.take();
}

std::string synth_keepers(const SynthKeepersOptions& opt) {
  if (opt.shares.empty()) throw DataError("synth_keepers: need at least one share");
  double sum = 0.0;
  std::vector<int> counts;
  for (double s : opt.shares) {
    double c = s * static_cast<double>(opt.total_comments);
    if (std::abs(c - std::round(c)) > 1e-9)
      throw DataError("synth_keepers: share * total_comments must be integral");
    counts.push_back(static_cast<int>(std::llround(c)));
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DataError("synth_keepers: shares must sum to 1");

  // One wide pool keeps every term under the no_above cap.
  auto pool = term_pool(0, 60);
  SplitMix64 rng(derive_seed(opt.seed, fnv1a64("keepers")));
  JsonlBuilder builder;
  std::int64_t start = year_span(2021).begin;

  int n_issues = 24;
  for (int i = 0; i < n_issues; ++i) {
    UtcTime ts{start + static_cast<std::int64_t>(i) * 86400 * 15};
    builder.issue(opt.project, "K-" + std::to_string(i + 1), sentence(pool, 6, rng),
                  sentence(pool, 19, rng), ts);
  }
  int comment_no = 0;
  for (std::size_t d = 0; d < counts.size(); ++d) {
    char dev_suffix = static_cast<char>('0' + d % 10);
    std::string dev = std::string("dev0") + dev_suffix;
    for (int c = 0; c < counts[d]; ++c) {
      ++comment_no;
      std::string issue_id = "K-" + std::to_string(comment_no % n_issues + 1);
      UtcTime ts{start + 3600 + static_cast<std::int64_t>(comment_no) * 86400 * 7};
      builder.comment(opt.project, issue_id, "K-c-" + std::to_string(comment_no), dev,
                      sentence(pool, 25, rng), ts);
    }
  }
  return builder.take();
}

std::string synth_leaver_traces(const SynthLeaversOptions& opt) {
  if (opt.quarters < 9) throw DataError("synth_leaver_traces: need at least 9 quarters");
  auto pool = term_pool(0, 40);
  SplitMix64 rng(derive_seed(opt.seed, fnv1a64("leavers")));
  JsonlBuilder builder;
  std::int64_t q0 = quarter_index(UtcTime{year_span(2015).begin});

  // one issue per quarter so comments always reference something
  for (int q = 0; q < opt.quarters; ++q) {
    TimeSpan span = quarter_span(q0 + q);
    builder.issue(opt.project, "L-" + std::to_string(q + 1), sentence(pool, 5, rng),
                  sentence(pool, 10, rng), UtcTime{span.begin});
  }

  int comment_no = 0;
  auto emit_quarter = [&](const std::string& dev, int q, int count) {
    TimeSpan span = quarter_span(q0 + q);
    for (int c = 0; c < count; ++c) {
      ++comment_no;
      std::int64_t offset = 3600 + (span.end - span.begin - 7200) * c / std::max(count, 1);
      builder.comment(opt.project, "L-" + std::to_string(q + 1),
                      "L-c-" + std::to_string(comment_no), dev, sentence(pool, 8, rng),
                      UtcTime{span.begin + offset});
    }
  };

  for (int i = 0; i < opt.leavers; ++i) {
    std::string dev = "leaver" + std::to_string(100 + i);
    // departure somewhere with 4 trailing and 4 subsequent quarters in range
    int departure = 4 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(opt.quarters - 7)));
    for (int q = 0; q < departure; ++q) emit_quarter(dev, q, 10 + static_cast<int>(rng.next_below(21)));
  }
  for (int i = 0; i < opt.stayers; ++i) {
    std::string dev = "stayer" + std::to_string(100 + i);
    for (int q = 0; q < opt.quarters; ++q) emit_quarter(dev, q, 10 + static_cast<int>(rng.next_below(21)));
  }
  return builder.take();
}

std::string synth_turnover(const SynthTurnoverOptions& opt) {
  auto pool_main = term_pool(0, 30);   // broad concept held by the team
  auto pool_niche = term_pool(1, 10);  // concept owned solely by the leaver
  SplitMix64 rng(derive_seed(opt.seed, fnv1a64("turnover")));
  JsonlBuilder builder;
  std::int64_t q0 = quarter_index(UtcTime{year_span(2018).begin});

  std::vector<std::vector<std::string>> issues_by_quarter_topic0(8), issues_by_quarter_topic1(8);
  int issue_no = 0;
  for (int q = 0; q < 8; ++q) {
    TimeSpan span = quarter_span(q0 + q);
    for (int i = 0; i < 4; ++i) {
      ++issue_no;
      std::string id = "TO-" + std::to_string(issue_no);
      builder.issue(opt.project, id, sentence(pool_main, 6, rng), sentence(pool_main, 19, rng),
                    UtcTime{span.begin + i * 86400});
      issues_by_quarter_topic0[static_cast<std::size_t>(q)].push_back(id);
    }
    for (int i = 0; i < 4; ++i) {
      ++issue_no;
      std::string id = "TO-" + std::to_string(issue_no);
      builder.issue(opt.project, id, sentence(pool_niche, 6, rng), sentence(pool_niche, 19, rng),
                    UtcTime{span.begin + (4 + i) * 86400});
      issues_by_quarter_topic1[static_cast<std::size_t>(q)].push_back(id);
    }
  }

  int comment_no = 0;
  auto emit = [&](const std::string& dev, int q, int count,
                  const std::vector<std::string>& issue_ids,
                  const std::vector<std::string>& pool) {
    TimeSpan span = quarter_span(q0 + q);
    for (int c = 0; c < count; ++c) {
      ++comment_no;
      std::int64_t offset = 7200 + (span.end - span.begin - 14400) * c / std::max(count, 1);
      builder.comment(opt.project, issue_ids[static_cast<std::size_t>(c) % issue_ids.size()],
                      "TO-c-" + std::to_string(comment_no), dev, sentence(pool, 25, rng),
                      UtcTime{span.begin + offset});
    }
  };

  for (int q = 0; q < 8; ++q) {
    emit("blake", q, 20, issues_by_quarter_topic0[static_cast<std::size_t>(q)], pool_main);
    emit("casey", q, 10, issues_by_quarter_topic0[static_cast<std::size_t>(q)], pool_main);
    if (q < 4) emit("lee", q, 20, issues_by_quarter_topic1[static_cast<std::size_t>(q)], pool_niche);
  }
  return builder.take();
}

std::string synth_alignment(const SynthAlignmentOptions& opt) {
  auto pool_zero = term_pool(0, 30);
  auto pool_one = term_pool(1, 10);
  SplitMix64 rng(derive_seed(opt.seed, fnv1a64("alignment")));
  JsonlBuilder builder;
  TimeSpan h1 = half_year_span(opt.year, 1);
  TimeSpan h2 = half_year_span(opt.year, 2);

  std::vector<std::string> h1_zero_issues, h1_one_issues;
  int issue_no = 0;
  auto make_issues = [&](TimeSpan span, int count, const std::vector<std::string>& pool,
                         const std::string& assignee, std::vector<std::string>* collect) {
    for (int i = 0; i < count; ++i) {
      ++issue_no;
      std::string id = "A-" + std::to_string(issue_no);
      std::int64_t offset = 3600 + (span.end - span.begin - 7200) * i / count;
      builder.issue(opt.project, id, sentence(pool, 6, rng), sentence(pool, 19, rng),
                    UtcTime{span.begin + offset}, assignee, "reporter");
      if (collect) collect->push_back(id);
    }
  };
  make_issues(h1, 30, pool_one, "alice", &h1_one_issues);
  make_issues(h1, 30, pool_zero, "bob", &h1_zero_issues);
  make_issues(h2, 30, pool_one, "alice", nullptr);
  make_issues(h2, 30, pool_zero, "bob", nullptr);

  int comment_no = 0;
  auto make_comments = [&](const std::string& dev, int count, const std::vector<std::string>& issues,
                           const std::vector<std::string>& pool) {
    for (int i = 0; i < count; ++i) {
      ++comment_no;
      std::int64_t offset = 7200 + (h1.end - h1.begin - 14400) * i / count;
      builder.comment(opt.project, issues[static_cast<std::size_t>(i) % issues.size()],
                      "A-c-" + std::to_string(comment_no), dev, sentence(pool, 25, rng),
                      UtcTime{h1.begin + offset});
    }
  };
  make_comments("alice", 40, h1_one_issues, pool_one);
  make_comments("bob", 60, h1_zero_issues, pool_zero);
  return builder.take();
}

std::string synth_mini(const SynthMiniOptions& opt) {
  SplitMix64 rng(derive_seed(opt.seed, fnv1a64("mini")));
  JsonlBuilder builder;

  struct Spec {
    std::string project;
    int first_year;
    int years;
    int issues_per_quarter;
    std::vector<std::string> devs;             // one specialist per topic, extras rotate
    std::vector<int> comments_per_quarter;     // parallel to devs
    int leaver_index;                          // -1 for none
    int leaver_last_quarter;                   // inclusive, relative
  };
  std::vector<Spec> specs = {
      {"apollo", 2014, 4, 6, {"amber", "blair", "cody", "dana", "ellis"}, {4, 4, 3, 5, 2}, 3, 7},
      {"borealis", 2015, 3, 5, {"finn", "gale", "harper"}, {3, 3, 4}, -1, 0},
  };

  for (const auto& spec : specs) {
    std::vector<std::vector<std::string>> pools;
    for (int t = 0; t < 3; ++t) pools.push_back(term_pool(t, 12));
    // appears in every document; the no_above filter must drop it
    const std::string boiler = "commonword";

    auto text = [&](int topic, int n) { return boiler + " " + sentence(pools[static_cast<std::size_t>(topic)], n, rng); };

    int quarters = spec.years * 4;
    std::int64_t q0 = quarter_index(UtcTime{year_span(spec.first_year).begin});
    std::vector<std::vector<std::string>> issue_ids_by_topic(3);
    int issue_no = 0, comment_no = 0;

    for (int q = 0; q < quarters; ++q) {
      TimeSpan span = quarter_span(q0 + q);
      for (int i = 0; i < spec.issues_per_quarter; ++i) {
        ++issue_no;
        int topic = (q * spec.issues_per_quarter + i) % 3;
        std::string id = spec.project + "-" + std::to_string(issue_no);
        // mostly the specialist, occasionally someone else
        std::size_t specialist = static_cast<std::size_t>(topic);
        std::size_t assignee_idx =
            issue_no % 7 == 0 ? (specialist + 1) % spec.devs.size() : specialist;
        std::string description = issue_no % 13 == 0 ? "" : text(topic, 14);
        builder.issue(spec.project, id, text(topic, 5), description,
                      UtcTime{span.begin + i * 86400 * 2 + 3600}, spec.devs[assignee_idx],
                      spec.devs[(assignee_idx + 1) % spec.devs.size()]);
        issue_ids_by_topic[static_cast<std::size_t>(topic)].push_back(id);
      }
      for (std::size_t d = 0; d < spec.devs.size(); ++d) {
        if (static_cast<int>(d) == spec.leaver_index && q > spec.leaver_last_quarter) continue;
        int topic = d < 3 ? static_cast<int>(d) : (static_cast<int>(d) + q) % 3;
        const auto& ids = issue_ids_by_topic[static_cast<std::size_t>(topic)];
        for (int c = 0; c < spec.comments_per_quarter[d]; ++c) {
          ++comment_no;
          std::int64_t offset = 43200 + (span.end - span.begin - 86400) * c /
                                            std::max(spec.comments_per_quarter[d], 1);
          builder.comment(spec.project, ids[static_cast<std::size_t>(comment_no) % ids.size()],
                          spec.project + "-c-" + std::to_string(comment_no), spec.devs[d],
                          text(topic, 18), UtcTime{span.begin + offset});
        }
      }
    }
  }
  return builder.take();
}

}  // namespace conceptrealm
