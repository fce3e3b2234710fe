#include "conceptrealm/lda.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include <nlohmann/json.hpp>

#include "conceptrealm/errors.hpp"
#include "conceptrealm/hash.hpp"
#include "conceptrealm/rng.hpp"

namespace conceptrealm {

using nlohmann::json;

namespace {

void normalize(std::vector<double>& v) {
  double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
}

int sample_from(const std::vector<double>& p, double u) {
  // u in [0,1); cumulative scan over unnormalized mass
  double total = std::accumulate(p.begin(), p.end(), 0.0);
  double target = u * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (acc > target) return static_cast<int>(i);
  }
  return static_cast<int>(p.size()) - 1;
}

}  // namespace

LdaModel train_lda(std::span<const Document> documents, int k, double alpha, double beta,
                   const TrainConfig& config, std::uint64_t seed,
                   const std::vector<std::string>& terms) {
  if (k < 1) throw DataError("train_lda: k must be >= 1");
  if (documents.empty()) throw DataError("train_lda: empty corpus");
  if (config.iterations < 1 || config.sample_lag < 1 || config.burn_in < 0)
    throw DataError("train_lda: invalid training schedule");
  const int v_size = static_cast<int>(terms.size());
  if (v_size == 0) throw DataError("train_lda: empty vocabulary");
  if (!(beta > 0.0)) throw DataError("train_lda: beta must be > 0");
  if (alpha <= 0.0) alpha = 50.0 / static_cast<double>(k);

  std::vector<std::size_t> order(documents.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return documents[a].doc_id < documents[b].doc_id;
  });

  std::vector<char> term_present(static_cast<std::size_t>(v_size), 0);
  std::size_t total_tokens = 0;
  for (const auto& doc : documents) {
    for (auto t : doc.tokens) {
      if (t < 0 || t >= v_size) throw DataError("train_lda: token index outside vocabulary");
      term_present[static_cast<std::size_t>(t)] = 1;
      ++total_tokens;
    }
  }
  if (total_tokens == 0) throw DataError("train_lda: corpus has no in-vocabulary tokens");
  int distinct = static_cast<int>(std::count(term_present.begin(), term_present.end(), 1));
  if (k > distinct)
    throw DataError("train_lda: k=" + std::to_string(k) + " exceeds distinct term count " +
                    std::to_string(distinct));

  const std::size_t n_docs = documents.size();
  std::vector<std::vector<int>> z(n_docs);
  std::vector<std::vector<int>> n_dk(n_docs, std::vector<int>(static_cast<std::size_t>(k), 0));
  std::vector<std::vector<int>> n_kv(static_cast<std::size_t>(k),
                                     std::vector<int>(static_cast<std::size_t>(v_size), 0));
  std::vector<int> n_k(static_cast<std::size_t>(k), 0);
  std::vector<SplitMix64> streams;
  streams.reserve(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d)
    streams.push_back(stream_for(seed, documents[order[d]].doc_id));

  for (std::size_t d = 0; d < n_docs; ++d) {
    const auto& doc = documents[order[d]];
    z[d].resize(doc.tokens.size());
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      int topic = static_cast<int>(streams[d].next_below(static_cast<std::uint32_t>(k)));
      z[d][i] = topic;
      ++n_dk[d][static_cast<std::size_t>(topic)];
      ++n_kv[static_cast<std::size_t>(topic)][static_cast<std::size_t>(doc.tokens[i])];
      ++n_k[static_cast<std::size_t>(topic)];
    }
  }

  const double v_beta = static_cast<double>(v_size) * beta;
  std::vector<double> p(static_cast<std::size_t>(k));
  std::vector<std::vector<double>> phi_acc(static_cast<std::size_t>(k),
                                           std::vector<double>(static_cast<std::size_t>(v_size), 0.0));
  int samples = 0;

  auto accumulate_phi = [&] {
    for (int t = 0; t < k; ++t) {
      double denom = static_cast<double>(n_k[static_cast<std::size_t>(t)]) + v_beta;
      for (int w = 0; w < v_size; ++w) {
        phi_acc[static_cast<std::size_t>(t)][static_cast<std::size_t>(w)] +=
            (static_cast<double>(n_kv[static_cast<std::size_t>(t)][static_cast<std::size_t>(w)]) +
             beta) /
            denom;
      }
    }
    ++samples;
  };

  for (int iter = 1; iter <= config.iterations; ++iter) {
    for (std::size_t d = 0; d < n_docs; ++d) {
      const auto& doc = documents[order[d]];
      auto& doc_topics = n_dk[d];
      for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
        int w = doc.tokens[i];
        int old_topic = z[d][i];
        --doc_topics[static_cast<std::size_t>(old_topic)];
        --n_kv[static_cast<std::size_t>(old_topic)][static_cast<std::size_t>(w)];
        --n_k[static_cast<std::size_t>(old_topic)];
        for (int t = 0; t < k; ++t) {
          p[static_cast<std::size_t>(t)] =
              (static_cast<double>(n_kv[static_cast<std::size_t>(t)][static_cast<std::size_t>(w)]) +
               beta) /
              (static_cast<double>(n_k[static_cast<std::size_t>(t)]) + v_beta) *
              (static_cast<double>(doc_topics[static_cast<std::size_t>(t)]) + alpha);
        }
        int new_topic = sample_from(p, streams[d].next_double());
        z[d][i] = new_topic;
        ++doc_topics[static_cast<std::size_t>(new_topic)];
        ++n_kv[static_cast<std::size_t>(new_topic)][static_cast<std::size_t>(w)];
        ++n_k[static_cast<std::size_t>(new_topic)];
      }
    }
    if (iter > config.burn_in && (iter - config.burn_in) % config.sample_lag == 0)
      accumulate_phi();
  }
  if (samples == 0) accumulate_phi();

  LdaModel model;
  model.k = k;
  model.alpha = alpha;
  model.beta = beta;
  model.terms = terms;
  model.seed = seed;
  model.config = config;
  model.phi.resize(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) {
    auto& row = model.phi[static_cast<std::size_t>(t)];
    row = phi_acc[static_cast<std::size_t>(t)];
    for (double& x : row) x /= static_cast<double>(samples);
    normalize(row);
  }
  return model;
}

std::vector<Document> tfidf_pseudocount_documents(std::span<const Document> documents,
                                                  const Vocabulary& vocab) {
  std::vector<Document> out(documents.begin(), documents.end());
  for (auto& doc : out) {
    auto weights = to_tfidf(doc, vocab);
    Document rebuilt = doc;
    rebuilt.tokens.clear();
    rebuilt.counts.clear();
    for (auto [idx, w] : weights) {
      auto count = static_cast<std::int32_t>(std::lround(w));
      if (count < 1) count = 1;  // present terms keep at least one pseudo-count
      rebuilt.counts[idx] = count;
      for (std::int32_t c = 0; c < count; ++c) rebuilt.tokens.push_back(idx);
    }
    doc = std::move(rebuilt);
  }
  return out;
}

std::vector<double> infer_document(const LdaModel& model, const Document& doc,
                                   int fold_in_iterations, std::uint64_t seed) {
  const int k = model.k;
  const int v_size = model.vocab_size();
  for (auto t : doc.tokens) {
    if (t < 0 || t >= v_size)
      throw DataError("infer_document: document vectorized over a different vocabulary");
  }
  if (doc.tokens.empty()) {
    std::vector<double> uniform(static_cast<std::size_t>(k),
                                1.0 / static_cast<double>(k));
    return uniform;
  }
  if (fold_in_iterations < 1) throw DataError("infer_document: fold_in_iterations must be >= 1");

  SplitMix64 rng = stream_for(seed, doc.doc_id);
  std::vector<int> z(doc.tokens.size());
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  std::vector<double> p(static_cast<std::size_t>(k));

  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    int w = doc.tokens[i];
    for (int t = 0; t < k; ++t)
      p[static_cast<std::size_t>(t)] = model.phi[static_cast<std::size_t>(t)][static_cast<std::size_t>(w)];
    z[i] = sample_from(p, rng.next_double());
    ++counts[static_cast<std::size_t>(z[i])];
  }
  for (int iter = 0; iter < fold_in_iterations; ++iter) {
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      int w = doc.tokens[i];
      --counts[static_cast<std::size_t>(z[i])];
      for (int t = 0; t < k; ++t) {
        p[static_cast<std::size_t>(t)] =
            model.phi[static_cast<std::size_t>(t)][static_cast<std::size_t>(w)] *
            (static_cast<double>(counts[static_cast<std::size_t>(t)]) + model.alpha);
      }
      z[i] = sample_from(p, rng.next_double());
      ++counts[static_cast<std::size_t>(z[i])];
    }
  }

  std::vector<double> weights(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t)
    weights[static_cast<std::size_t>(t)] =
        static_cast<double>(counts[static_cast<std::size_t>(t)]) + model.alpha;
  normalize(weights);
  return weights;
}

ConceptTermList top_terms(const LdaModel& model, int concept_id, int n) {
  if (concept_id < 0 || concept_id >= model.k)
    throw DataError("top_terms: concept_id outside [0, K)");
  if (n < 0) throw DataError("top_terms: n must be >= 0");
  const auto& row = model.phi[static_cast<std::size_t>(concept_id)];
  std::vector<int> idx(row.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (row[static_cast<std::size_t>(a)] != row[static_cast<std::size_t>(b)])
      return row[static_cast<std::size_t>(a)] > row[static_cast<std::size_t>(b)];
    return a < b;  // ties by ascending vocabulary index
  });
  ConceptTermList out;
  out.concept_id = concept_id;
  int take = std::min<int>(n, static_cast<int>(row.size()));
  out.terms.reserve(static_cast<std::size_t>(take));
  for (int i = 0; i < take; ++i) {
    out.terms.emplace_back(model.terms[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])],
                           row[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
  }
  return out;
}

std::string model_to_json(const LdaModel& model) {
  json doc;
  doc["format"] = "conceptrealm-model";
  doc["version"] = 1;
  doc["k"] = model.k;
  doc["alpha"] = model.alpha;
  doc["beta"] = model.beta;
  doc["seed"] = model.seed;
  doc["config"] = {{"iterations", model.config.iterations},
                   {"burn_in", model.config.burn_in},
                   {"sample_lag", model.config.sample_lag}};
  doc["terms"] = model.terms;
  doc["phi"] = model.phi;
  return doc.dump();
}

LdaModel model_from_json(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::exception& e) {
    throw DataError(std::string("model JSON unreadable: ") + e.what());
  }
  if (doc.value("format", "") != "conceptrealm-model")
    throw DataError("model JSON: unrecognized format tag");
  if (doc.value("version", 0) != 1) throw DataError("model JSON: unsupported version");
  LdaModel model;
  model.k = doc.at("k").get<int>();
  model.alpha = doc.at("alpha").get<double>();
  model.beta = doc.at("beta").get<double>();
  model.seed = doc.at("seed").get<std::uint64_t>();
  model.config.iterations = doc.at("config").at("iterations").get<int>();
  model.config.burn_in = doc.at("config").at("burn_in").get<int>();
  model.config.sample_lag = doc.at("config").at("sample_lag").get<int>();
  model.terms = doc.at("terms").get<std::vector<std::string>>();
  model.phi = doc.at("phi").get<std::vector<std::vector<double>>>();
  if (static_cast<int>(model.phi.size()) != model.k)
    throw DataError("model JSON: phi row count does not match k");
  for (const auto& row : model.phi) {
    if (row.size() != model.terms.size()) throw DataError("model JSON: phi row width mismatch");
  }
  return model;
}

namespace {

constexpr char kBinaryMagic[4] = {'C', 'R', 'L', 'M'};

void append_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t read_u32(const std::string& in, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  return v;
}

}  // namespace

std::string model_to_binary(const LdaModel& model) {
  std::string out(kBinaryMagic, 4);
  append_u32(out, 1);
  append_u32(out, static_cast<std::uint32_t>(model.k));
  append_u32(out, static_cast<std::uint32_t>(model.vocab_size()));
  for (const auto& row : model.phi) {
    for (double x : row) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof(bits));
      for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
    }
  }
  return out;
}

LdaModel model_from_binary(const std::string& bytes, const LdaModel& json_model) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kBinaryMagic, 4) != 0)
    throw DataError("model binary: bad magic");
  if (read_u32(bytes, 4) != 1) throw DataError("model binary: unsupported version");
  auto k = read_u32(bytes, 8);
  auto v = read_u32(bytes, 12);
  if (static_cast<int>(k) != json_model.k || static_cast<int>(v) != json_model.vocab_size())
    throw DataError("model binary: dimensions disagree with the JSON model");
  if (bytes.size() != 16 + static_cast<std::size_t>(k) * v * 8)
    throw DataError("model binary: truncated payload");
  LdaModel model = json_model;
  std::size_t pos = 16;
  for (auto& row : model.phi) {
    for (double& x : row) {
      std::uint64_t bits = 0;
      for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
      std::memcpy(&x, &bits, sizeof(x));
      pos += 8;
    }
  }
  return model;
}

std::string model_hash(const LdaModel& model) { return sha256_hex(model_to_json(model)); }

}  // namespace conceptrealm
