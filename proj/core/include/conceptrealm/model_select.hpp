#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "conceptrealm/lda.hpp"

namespace conceptrealm {

// |A ∩ B| / |A ∪ B|; two empty sets give 0.
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

// Mean pairwise Jaccard over all unordered pairs of top-10 term sets.
// K = 1 gives 0.
double concept_overlap(const LdaModel& model);

// Boolean sliding-window occurrence counts. Windows of `window_size`
// tokens advance one token at a time within each document; documents
// shorter than a window count as a single whole-document window. Only the
// terms in `needed` are tracked.
struct WindowStats {
  std::int64_t windows = 0;
  std::unordered_map<std::int32_t, std::int64_t> term_windows;
  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> pair_windows;

  static constexpr double kEpsilon = 1e-12;  // smoothing floor for degenerate logs

  double prob(std::int32_t term) const;
  double joint(std::int32_t a, std::int32_t b) const;
};

WindowStats build_window_stats(std::span<const Document> documents, int window_size,
                               const std::set<std::int32_t>& needed);

// ln(p(i,j)/(p(i)p(j))) / (-ln p(i,j)), with the exact conventions:
// no co-occurrence -> -1, exact independence -> 0, co-occurrence in every
// window -> 1. Throws DataError for terms never observed.
double npmi(std::int32_t term_i, std::int32_t term_j, const WindowStats& stats);

// Mean over concepts of the pair-normalized NPMI sum across each concept's
// top-10 terms (45 pairs at full width).
double coherence(const LdaModel& model, std::span<const Document> documents,
                 int window_size = 110);

struct KSelectionRow {
  int k = 0;
  double coherence = 0.0;
  double overlap = 0.0;
  double score = 0.0;  // coherence - overlap
};

struct KSelectionResult {
  std::vector<KSelectionRow> rows;                     // ascending K, successes only
  std::vector<std::pair<int, std::string>> failures;   // (K, reason)
  int chosen_k = 0;
  double mean_coherence = 0.0;
  double mean_overlap = 0.0;
};

struct SelectKOptions {
  int k_min = 1;
  int k_max = 30;
  double alpha = 0.0;  // <= 0 -> 50/K
  double beta = 0.01;
  TrainConfig train;
  int coherence_window = 110;
  int jobs = 1;
};

// Sweeps K with per-K seeds (base_seed XOR K); chosen_k maximizes
// coherence - overlap, ties to the smaller K. Throws DataError when every
// K fails.
KSelectionResult select_k(const VectorizedCorpus& corpus, std::uint64_t base_seed,
                          const SelectKOptions& opt);

std::string select_k_csv(const KSelectionResult& result);
int chosen_k_from_csv(const std::string& csv);

}  // namespace conceptrealm
