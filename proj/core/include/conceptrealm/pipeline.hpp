#pragma once

#include <cstdint>
#include <string>

#include "conceptrealm/analytics.hpp"
#include "conceptrealm/model_select.hpp"
#include "conceptrealm/realm.hpp"
#include "conceptrealm/report.hpp"

namespace conceptrealm {

// One reproducible run. The seed is mandatory: nothing falls back to the
// wall clock.
struct RunConfig {
  std::string input;         // JSONL export
  std::string output = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;

  int no_below = 15;
  double no_above = 0.5;
  bool filter_issues_only = false;  // count df over issues only
  std::string stopwords_path;       // empty -> bundled list
  std::string lemma_path;
  std::string alias_path;

  int k_min = 1;
  int k_max = 30;
  double alpha = 0.0;  // <= 0 -> 50/K
  double beta = 0.01;
  TrainConfig train;
  int fold_in_iterations = 100;
  int coherence_window = 110;
  bool tfidf_pseudocounts = false;
  bool issues_only_training = false;
  bool model_binary = false;

  std::string windowing = "yearly";  // or "quarterly"
  double keeper_threshold = 0.5;
  double leaver_threshold = 0.10;
  double split_margin = 0.01;
  int top_n = 1;
  int min_half_issues = 10;

  int jobs = 1;
};

// Throws DataError on invalid field combinations or a missing seed.
void validate_config(const RunConfig& cfg);

// Stage entry points; each reads its inputs from cfg.output as written by
// the previous stage, so `pipeline` equals the composition of the stages.
void run_ingest(const RunConfig& cfg);
void run_select_k(const RunConfig& cfg);
void run_train(const RunConfig& cfg);
void run_realm(const RunConfig& cfg);
void run_analyze(const RunConfig& cfg);
void run_report(const RunConfig& cfg);
void run_pipeline(const RunConfig& cfg);

}  // namespace conceptrealm
