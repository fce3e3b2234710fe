#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "conceptrealm/corpus.hpp"

namespace conceptrealm {

struct TrainConfig {
  int iterations = 1000;
  int burn_in = 200;
  int sample_lag = 10;
};

// Collapsed-Gibbs LDA. phi rows are the smoothed topic-term distributions
// averaged over post-burn-in samples; immutable once trained.
struct LdaModel {
  int k = 0;
  double alpha = 0.0;  // symmetric document-concept prior
  double beta = 0.0;   // symmetric concept-term prior
  std::vector<std::string> terms;         // vocabulary snapshot
  std::vector<std::vector<double>> phi;   // k rows of size V, each sums to 1
  std::uint64_t seed = 0;
  TrainConfig config;

  int vocab_size() const { return static_cast<int>(terms.size()); }
};

// alpha <= 0 selects the 50/K heuristic. Iterates documents in doc_id
// order with per-document RNG streams keyed on doc_id, so training is
// invariant under permutation of the input. Rejects K < 1, an empty
// corpus, and K greater than the number of distinct terms present.
LdaModel train_lda(std::span<const Document> documents, int k, double alpha, double beta,
                   const TrainConfig& config, std::uint64_t seed,
                   const std::vector<std::string>& terms);

// Optional replication mode: TF-IDF weights rounded to pseudo-counts
// (minimum 1 per present term) before sampling.
std::vector<Document> tfidf_pseudocount_documents(std::span<const Document> documents,
                                                  const Vocabulary& vocab);

// Fold-in Gibbs with phi frozen; returns the normalized document-concept
// weights ((assignment counts + alpha) normalized). Empty or all-OOV
// documents get the uniform vector.
std::vector<double> infer_document(const LdaModel& model, const Document& doc,
                                   int fold_in_iterations, std::uint64_t seed);

struct ConceptTermList {
  int concept_id = 0;
  std::vector<std::pair<std::string, double>> terms;  // probability descending
};

// Top-n terms of one concept; ties broken by ascending vocabulary index,
// n clamped to the vocabulary size.
ConceptTermList top_terms(const LdaModel& model, int concept_id, int n = 10);

// Versioned JSON is the authoritative persisted form; the binary sidecar
// (little-endian: magic "CRLM", version u32, K u32, V u32, K*V f64) is a
// compact mirror of phi.
std::string model_to_json(const LdaModel& model);
LdaModel model_from_json(const std::string& bytes);
std::string model_to_binary(const LdaModel& model);
LdaModel model_from_binary(const std::string& bytes, const LdaModel& json_model);
std::string model_hash(const LdaModel& model);  // sha256 of the JSON form

}  // namespace conceptrealm
