#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conceptrealm {

// Deterministic synthetic corpora in the JSON Lines import format. These
// back the acceptance experiments and are exposed through the `synth` CLI
// subcommand so fixtures can be regenerated or extended.

struct SynthTopicsOptions {
  std::uint64_t seed = 7;
  int topics = 3;
  int docs = 200;
  int tokens_per_doc = 50;
  int support = 10;  // disjoint terms per topic
  std::string project = "synthtopics";
};

// Pure-topic issues drawn from disjoint term supports.
std::string synth_topics(const SynthTopicsOptions& opt);

// The planted topic supports (term lists) for a given configuration, after
// the preprocessing pipeline (terms are chosen to be stable under it).
std::vector<std::vector<std::string>> synth_topic_supports(const SynthTopicsOptions& opt);

struct SynthKeepersOptions {
  std::uint64_t seed = 11;
  std::vector<double> shares = {0.6, 0.2, 0.1, 0.1};  // per-developer comment shares
  int total_comments = 40;  // shares * total must be integral
  std::string project = "synthkeepers";
};

// Single-concept project whose developers' comment counts realize the
// given normalized shares exactly (train with K=1).
std::string synth_keepers(const SynthKeepersOptions& opt);

struct SynthLeaversOptions {
  std::uint64_t seed = 13;
  int leavers = 50;
  int stayers = 50;
  int quarters = 16;
  std::string project = "synthleavers";
};

// Activity traces: leavers drop to zero after a planted quarter, stayers
// never fall below the 10% rule's reach.
std::string synth_leaver_traces(const SynthLeaversOptions& opt);

struct SynthTurnoverOptions {
  std::uint64_t seed = 17;
  std::string project = "synthturnover";
};

// Two-topic project in which one developer owns every pre-departure
// comment of one concept and then leaves.
std::string synth_turnover(const SynthTurnoverOptions& opt);

struct SynthAlignmentOptions {
  std::uint64_t seed = 19;
  int year = 2019;
  std::string project = "synthalign";
};

// One-year, two-topic, two-developer project where each developer
// exclusively handles and is assigned one topic's issues; the second
// developer is the most active.
std::string synth_alignment(const SynthAlignmentOptions& opt);

struct SynthMiniOptions {
  std::uint64_t seed = 1305;
};

// Two small multi-year projects exercising every analysis (three topics,
// several developers, one planted leaver). This is the bundled mini corpus.
std::string synth_mini(const SynthMiniOptions& opt);

}  // namespace conceptrealm
