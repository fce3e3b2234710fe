#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conceptrealm/errors.hpp"
#include "conceptrealm/pipeline.hpp"
#include "conceptrealm/report.hpp"
#include "conceptrealm/synth.hpp"

namespace {

constexpr const char* kVersion = "0.3.0";

using conceptrealm::DataError;
using conceptrealm::RunConfig;

class ConfigUsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key = value file ('#' comments, optional double quotes around
// values). Flags given on the command line take precedence over the file.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigUsageError("cannot read config file: " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quotes = !in_quotes;
      if (line[i] == '#' && !in_quotes) {
        line.resize(i);
        break;
      }
    }
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string();
      std::size_t e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    std::string text = trim(line);
    if (text.empty()) continue;
    auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigUsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty() || value.empty())
      throw ConfigUsageError(path + ":" + std::to_string(line_no) + ": empty key or value");
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

// One row per RunConfig field: the flag, the CLI11 option (to know whether
// the command line already set it) and a parser for config-file values.
struct StageOptions {
  RunConfig* cfg;
  std::string config_path;
  std::map<std::string, CLI::Option*> options;
  std::map<std::string, std::function<void(const std::string&)>> setters;
  CLI::Option* seed_option = nullptr;
  bool seed_in_file = false;

  void apply_config_file() {
    if (config_path.empty()) return;
    for (const auto& [key, value] : read_config_file(config_path)) {
      auto setter = setters.find(key);
      if (setter == setters.end())
        throw ConfigUsageError("unknown config key \"" + key + "\" in " + config_path);
      if (options.at(key)->count() > 0) continue;  // flag overrides file
      try {
        setter->second(value);
      } catch (const std::exception&) {
        throw ConfigUsageError("bad value for \"" + key + "\" in " + config_path + ": " + value);
      }
      if (key == "seed") seed_in_file = true;
    }
  }
};

std::int64_t parse_int(const std::string& v) {
  std::size_t used = 0;
  std::int64_t out = std::stoll(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return out;
}

std::uint64_t parse_uint(const std::string& v) {
  std::size_t used = 0;
  std::uint64_t out = std::stoull(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return out;
}

double parse_real(const std::string& v) {
  std::size_t used = 0;
  double out = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument(v);
}

std::shared_ptr<StageOptions> add_run_options(CLI::App* cmd, RunConfig& cfg) {
  auto stage = std::make_shared<StageOptions>();
  stage->cfg = &cfg;
  cmd->add_option("--config", stage->config_path, "key = value config file; flags override it");

  auto bind_string = [&](const std::string& key, std::string& field, const char* help) {
    stage->options[key] = cmd->add_option("--" + key, field, help);
    stage->setters[key] = [&field](const std::string& v) { field = v; };
  };
  auto bind_int = [&](const std::string& key, int& field, const char* help) {
    stage->options[key] = cmd->add_option("--" + key, field, help)->capture_default_str();
    stage->setters[key] = [&field](const std::string& v) { field = static_cast<int>(parse_int(v)); };
  };
  auto bind_real = [&](const std::string& key, double& field, const char* help) {
    stage->options[key] = cmd->add_option("--" + key, field, help)->capture_default_str();
    stage->setters[key] = [&field](const std::string& v) { field = parse_real(v); };
  };
  auto bind_flag = [&](const std::string& key, bool& field, const char* help) {
    stage->options[key] = cmd->add_flag("--" + key, field, help);
    stage->setters[key] = [&field](const std::string& v) { field = parse_bool(v); };
  };

  bind_string("input", cfg.input, "JSON Lines issue-tracker export");
  bind_string("output", cfg.output, "output directory");
  stage->seed_option = cmd->add_option("--seed", cfg.seed, "master seed; required, no wall-clock fallback");
  stage->options["seed"] = stage->seed_option;
  stage->setters["seed"] = [&cfg](const std::string& v) { cfg.seed = parse_uint(v); };
  bind_int("no-below", cfg.no_below, "drop terms in fewer documents than this");
  bind_real("no-above", cfg.no_above, "drop terms in more than this fraction of documents");
  bind_flag("filter-issues-only", cfg.filter_issues_only, "count document frequency over issues only");
  bind_string("stopwords", cfg.stopwords_path, "stopword file (one token per line)");
  bind_string("lemmas", cfg.lemma_path, "lemma table (surface<TAB>lemma)");
  bind_string("aliases", cfg.alias_path, "developer alias map (alias<TAB>canonical)");
  bind_int("k-min", cfg.k_min, "smallest concept count in the sweep");
  bind_int("k-max", cfg.k_max, "largest concept count in the sweep");
  bind_real("alpha", cfg.alpha, "document-concept prior; 0 selects 50/K");
  bind_real("beta", cfg.beta, "concept-term prior");
  bind_int("iterations", cfg.train.iterations, "Gibbs iterations");
  bind_int("burn-in", cfg.train.burn_in, "burn-in iterations");
  bind_int("sample-lag", cfg.train.sample_lag, "iterations between phi samples");
  bind_int("fold-in-iterations", cfg.fold_in_iterations, "fold-in iterations per document");
  bind_int("coherence-window", cfg.coherence_window, "sliding window size in tokens");
  bind_flag("tfidf-pseudocounts", cfg.tfidf_pseudocounts,
            "train on TF-IDF weights rounded to pseudo-counts");
  bind_flag("issues-only-training", cfg.issues_only_training,
            "train the model on issues only (comments are still folded in)");
  bind_flag("model-bin", cfg.model_binary, "also write the binary phi sidecar");
  bind_string("windowing", cfg.windowing, "yearly or quarterly");
  bind_real("keeper-threshold", cfg.keeper_threshold, "cumulative share keepers must reach");
  bind_real("leaver-threshold", cfg.leaver_threshold,
            "activity fraction below which a developer counts as gone");
  bind_real("split-margin", cfg.split_margin, "margin around the median gap");
  bind_int("top-n", cfg.top_n, "assignee within top-n ranked developers counts as a hit");
  bind_int("min-half-issues", cfg.min_half_issues, "issue floor per half-year for alignment");
  bind_int("jobs", cfg.jobs, "parallel workers; results are identical for any value");
  return stage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conceptrealm: concept extraction and knowledge-distribution analytics for issue trackers"};
  app.require_subcommand(0, 1);

  bool show_version = false;
  app.add_flag("--version", show_version, "print artifact and file-format versions");

  RunConfig cfg;
  std::function<void(const RunConfig&)> stage_fn;
  std::shared_ptr<StageOptions> active_stage;

  struct StageDef {
    const char* name;
    const char* help;
    void (*fn)(const RunConfig&);
  };
  const std::vector<StageDef> stages = {
      {"ingest", "parse and preprocess the export into per-project corpora", conceptrealm::run_ingest},
      {"select-k", "sweep K and pick the concept count per project", conceptrealm::run_select_k},
      {"train", "train the final model at the chosen K", conceptrealm::run_train},
      {"realm", "infer concept weights for every issue and comment", conceptrealm::run_realm},
      {"analyze", "run all analyses and emit per-project CSVs and plot data", conceptrealm::run_analyze},
      {"report", "aggregate summaries and write the output manifest", conceptrealm::run_report},
      {"pipeline", "run every stage in order", conceptrealm::run_pipeline},
  };
  for (const auto& def : stages) {
    CLI::App* sub = app.add_subcommand(def.name, def.help);
    auto options = add_run_options(sub, cfg);
    auto fn = def.fn;
    sub->callback([&stage_fn, &active_stage, options, fn] {
      active_stage = options;
      stage_fn = fn;
    });
  }

  // synth: deterministic fixture corpora
  CLI::App* synth = app.add_subcommand("synth", "generate synthetic fixture corpora");
  std::string synth_out = "synth.jsonl";
  std::uint64_t synth_seed = 7;
  int topics = 0, docs = 200, tokens_per_doc = 50, support = 10;
  std::string keeper_shares;
  int leavers = 0, stayers = 50, quarters = 16;
  bool turnover = false, alignment = false, mini = false;
  synth->add_option("--out", synth_out, "output JSONL path")->capture_default_str();
  synth->add_option("--seed", synth_seed, "generator seed")->capture_default_str();
  synth->add_option("--topics", topics, "planted-topic corpus with this many disjoint topics");
  synth->add_option("--docs", docs, "documents in the planted-topic corpus")->capture_default_str();
  synth->add_option("--tokens-per-doc", tokens_per_doc, "tokens per document")->capture_default_str();
  synth->add_option("--support", support, "terms per planted topic")->capture_default_str();
  synth->add_option("--keepers", keeper_shares,
                    "comma-separated developer shares, e.g. 0.6,0.2,0.1,0.1");
  synth->add_option("--leavers", leavers, "activity traces with planted departures");
  synth->add_option("--stayers", stayers, "activity traces without departures")->capture_default_str();
  synth->add_option("--quarters", quarters, "quarters covered by the traces")->capture_default_str();
  synth->add_flag("--turnover", turnover, "fixture with a leaver owning one concept");
  synth->add_flag("--alignment", alignment, "fixture where assignees match concepts");
  synth->add_flag("--mini", mini, "the bundled multi-project mini corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (show_version) {
    std::printf("conceptrealm %s (formats: corpus 1, model 1, realm 1, manifest 1)\n", kVersion);
    return 0;
  }

  try {
    if (active_stage) {
      active_stage->apply_config_file();
      cfg.seed_set = active_stage->seed_option->count() > 0 || active_stage->seed_in_file;
    }
  } catch (const ConfigUsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  try {
    if (synth->parsed()) {
      std::string bytes;
      if (mini) {
        bytes = conceptrealm::synth_mini({synth_seed});
      } else if (turnover) {
        bytes = conceptrealm::synth_turnover({synth_seed, "synthturnover"});
      } else if (alignment) {
        bytes = conceptrealm::synth_alignment({synth_seed, 2019, "synthalign"});
      } else if (!keeper_shares.empty()) {
        conceptrealm::SynthKeepersOptions opt;
        opt.seed = synth_seed;
        opt.shares.clear();
        std::string item;
        for (char c : keeper_shares + ",") {
          if (c == ',') {
            if (!item.empty()) opt.shares.push_back(parse_real(item));
            item.clear();
          } else {
            item.push_back(c);
          }
        }
        bytes = conceptrealm::synth_keepers(opt);
      } else if (leavers > 0) {
        conceptrealm::SynthLeaversOptions opt;
        opt.seed = synth_seed;
        opt.leavers = leavers;
        opt.stayers = stayers;
        opt.quarters = quarters;
        bytes = conceptrealm::synth_leaver_traces(opt);
      } else {
        conceptrealm::SynthTopicsOptions opt;
        opt.seed = synth_seed;
        opt.topics = topics > 0 ? topics : 3;
        opt.docs = docs;
        opt.tokens_per_doc = tokens_per_doc;
        opt.support = support;
        bytes = conceptrealm::synth_topics(opt);
      }
      auto path = std::filesystem::path(synth_out);
      auto dir = path.parent_path();
      conceptrealm::OutputWriter writer(dir.empty() ? "." : dir.string());
      writer.write_file(path.filename().string(), bytes);
      return 0;
    }
    if (stage_fn) {
      stage_fn(cfg);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  std::fprintf(stderr, "%s\n", app.help().c_str());
  return 1;
}
