#include "conceptrealm/model_select.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conceptrealm/csv.hpp"
#include "conceptrealm/errors.hpp"
#include "conceptrealm/parallel.hpp"
#include "conceptrealm/rng.hpp"

namespace conceptrealm {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t intersection = 0;
  for (const auto& t : a)
    if (b.contains(t)) ++intersection;
  std::size_t unionsize = a.size() + b.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(unionsize);
}

double concept_overlap(const LdaModel& model) {
  if (model.k <= 1) return 0.0;
  std::vector<std::set<std::string>> tops(static_cast<std::size_t>(model.k));
  for (int c = 0; c < model.k; ++c) {
    for (const auto& [term, prob] : top_terms(model, c, 10).terms)
      tops[static_cast<std::size_t>(c)].insert(term);
  }
  double sum = 0.0;
  int pairs = 0;
  for (int i = 0; i < model.k; ++i) {
    for (int j = i + 1; j < model.k; ++j) {
      sum += jaccard(tops[static_cast<std::size_t>(i)], tops[static_cast<std::size_t>(j)]);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

double WindowStats::prob(std::int32_t term) const {
  auto it = term_windows.find(term);
  double count = it == term_windows.end() ? 0.0 : static_cast<double>(it->second);
  return count / static_cast<double>(windows);
}

double WindowStats::joint(std::int32_t a, std::int32_t b) const {
  if (a > b) std::swap(a, b);
  auto it = pair_windows.find({a, b});
  double count = it == pair_windows.end() ? 0.0 : static_cast<double>(it->second);
  return count / static_cast<double>(windows);
}

WindowStats build_window_stats(std::span<const Document> documents, int window_size,
                               const std::set<std::int32_t>& needed) {
  if (window_size < 1) throw DataError("build_window_stats: window_size must be >= 1");
  WindowStats stats;
  std::vector<std::int32_t> present;
  for (const auto& doc : documents) {
    const auto& tokens = doc.tokens;
    if (tokens.empty()) continue;
    std::size_t len = tokens.size();
    std::size_t wsize = std::min<std::size_t>(static_cast<std::size_t>(window_size), len);
    std::size_t n_windows = len - wsize + 1;
    for (std::size_t start = 0; start < n_windows; ++start) {
      present.clear();
      for (std::size_t i = start; i < start + wsize; ++i) {
        if (needed.contains(tokens[i])) present.push_back(tokens[i]);
      }
      std::sort(present.begin(), present.end());
      present.erase(std::unique(present.begin(), present.end()), present.end());
      for (std::size_t a = 0; a < present.size(); ++a) {
        stats.term_windows[present[a]] += 1;
        for (std::size_t b = a + 1; b < present.size(); ++b)
          stats.pair_windows[{present[a], present[b]}] += 1;
      }
      stats.windows += 1;
    }
  }
  if (stats.windows == 0) stats.windows = 1;  // empty corpus: all probabilities 0
  return stats;
}

double npmi(std::int32_t term_i, std::int32_t term_j, const WindowStats& stats) {
  double pi = stats.prob(term_i);
  double pj = stats.prob(term_j);
  if (pi <= 0.0 || pj <= 0.0)
    throw DataError("npmi: term never observed in any window");
  double pij = stats.joint(term_i, term_j);
  if (pij <= 0.0) return -1.0;
  if (pij >= 1.0) return 1.0;          // co-occur in every window
  if (pij == pi * pj) return 0.0;      // exact independence
  double num = std::log(pij) - std::log(pi) - std::log(pj);
  double den = std::max(-std::log(pij), WindowStats::kEpsilon);
  return std::clamp(num / den, -1.0, 1.0);
}

double coherence(const LdaModel& model, std::span<const Document> documents, int window_size) {
  std::unordered_map<std::string, std::int32_t> term_index;
  for (std::size_t i = 0; i < model.terms.size(); ++i)
    term_index.emplace(model.terms[i], static_cast<std::int32_t>(i));

  std::vector<std::vector<std::int32_t>> concept_terms(static_cast<std::size_t>(model.k));
  std::set<std::int32_t> needed;
  for (int c = 0; c < model.k; ++c) {
    for (const auto& [term, prob] : top_terms(model, c, 10).terms) {
      std::int32_t idx = term_index.at(term);
      concept_terms[static_cast<std::size_t>(c)].push_back(idx);
      needed.insert(idx);
    }
  }

  WindowStats stats = build_window_stats(documents, window_size, needed);

  double total = 0.0;
  for (int c = 0; c < model.k; ++c) {
    const auto& terms = concept_terms[static_cast<std::size_t>(c)];
    double sum = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        sum += npmi(terms[i], terms[j], stats);
        ++pairs;
      }
    }
    total += pairs > 0 ? sum / static_cast<double>(pairs) : 0.0;
  }
  return total / static_cast<double>(model.k);
}

KSelectionResult select_k(const VectorizedCorpus& corpus, std::uint64_t base_seed,
                          const SelectKOptions& opt) {
  if (opt.k_min < 1 || opt.k_max < opt.k_min) throw DataError("select_k: bad K range");
  int n = opt.k_max - opt.k_min + 1;
  struct Slot {
    bool ok = false;
    KSelectionRow row;
    std::string error;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(n));

  parallel_for(static_cast<std::size_t>(n), opt.jobs, [&](std::size_t i) {
    int k = opt.k_min + static_cast<int>(i);
    auto& slot = slots[i];
    try {
      std::uint64_t seed = base_seed ^ static_cast<std::uint64_t>(k);
      LdaModel model = train_lda(corpus.documents, k, opt.alpha, opt.beta, opt.train, seed,
                                 corpus.vocab.terms);
      slot.row.k = k;
      slot.row.coherence = coherence(model, corpus.documents, opt.coherence_window);
      slot.row.overlap = concept_overlap(model);
      slot.row.score = slot.row.coherence - slot.row.overlap;
      slot.ok = true;
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
  });

  KSelectionResult result;
  for (auto& slot : slots) {
    if (slot.ok) {
      result.rows.push_back(slot.row);
    } else {
      result.failures.emplace_back(opt.k_min + static_cast<int>(&slot - slots.data()), slot.error);
    }
  }
  if (result.rows.empty()) throw DataError("select_k: every K in the sweep failed to train");

  const KSelectionRow* best = &result.rows.front();
  double coh_sum = 0.0, ov_sum = 0.0;
  for (const auto& row : result.rows) {
    coh_sum += row.coherence;
    ov_sum += row.overlap;
    if (row.score > best->score) best = &row;  // strict: ties keep the smaller K
  }
  result.chosen_k = best->k;
  result.mean_coherence = coh_sum / static_cast<double>(result.rows.size());
  result.mean_overlap = ov_sum / static_cast<double>(result.rows.size());
  return result;
}

std::string select_k_csv(const KSelectionResult& result) {
  std::string out = "K,coherence,overlap,score,chosen\n";
  for (const auto& row : result.rows) {
    out += csv_int(row.k) + "," + csv_double(row.coherence) + "," + csv_double(row.overlap) +
           "," + csv_double(row.score) + "," + (row.k == result.chosen_k ? "1" : "0") + "\n";
  }
  return out;
}

int chosen_k_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.size() >= 2 && line.substr(line.size() - 2) == ",1") {
      return std::stoi(line.substr(0, line.find(',')));
    }
  }
  throw DataError("select_k.csv has no chosen row");
}

}  // namespace conceptrealm
