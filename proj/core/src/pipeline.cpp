#include "conceptrealm/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include "conceptrealm/csv.hpp"
#include "conceptrealm/errors.hpp"
#include "conceptrealm/log.hpp"
#include "conceptrealm/parallel.hpp"
#include "conceptrealm/rng.hpp"

namespace conceptrealm {

namespace fs = std::filesystem;

namespace {

std::string sanitize_key(const std::string& project) {
  std::string out;
  for (char c : project) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "_" : out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool file_exists(const fs::path& path) {
  std::error_code ec;
  return fs::is_regular_file(path, ec);
}

std::vector<std::string> project_dirs(const RunConfig& cfg) {
  std::vector<std::string> projects;
  fs::path root(cfg.output);
  if (!fs::is_directory(root)) throw DataError("output directory missing: " + cfg.output);
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && file_exists(entry.path() / "corpus.json"))
      projects.push_back(entry.path().filename().string());
  }
  std::sort(projects.begin(), projects.end());
  if (projects.empty()) throw DataError("no ingested projects under " + cfg.output);
  return projects;
}

std::uint64_t project_seed(const RunConfig& cfg, const std::string& project) {
  return derive_seed(cfg.seed, fnv1a64(project));
}

Windowing windowing_of(const RunConfig& cfg) {
  return cfg.windowing == "quarterly" ? Windowing::Quarterly : Windowing::Yearly;
}

CorpusOptions corpus_options(const RunConfig& cfg, StopwordSet& stop_storage,
                             LemmaTable& lemma_storage) {
  CorpusOptions opt;
  opt.no_below = cfg.no_below;
  opt.no_above = cfg.no_above;
  if (!cfg.stopwords_path.empty()) {
    stop_storage = load_stopwords(cfg.stopwords_path);
    opt.preprocess.stopwords = &stop_storage;
  }
  if (!cfg.lemma_path.empty()) {
    lemma_storage = load_lemma_table(cfg.lemma_path);
    opt.preprocess.lemmas = &lemma_storage;
  }
  if (!cfg.alias_path.empty()) {
    for (const auto& [surface, canonical] : load_lemma_table(cfg.alias_path))
      opt.aliases.emplace(surface, canonical);
  }
  return opt;
}

// Comment-level team frequency: scaled mean over every comment in the span.
std::optional<std::vector<double>> team_comment_frequency(const ConceptRealm& realm,
                                                          TimeSpan span) {
  AbsoluteFrequency acf = absolute_frequency(realm, std::nullopt, span);
  if (acf.n == 0) return std::nullopt;
  std::vector<double> values(acf.values.size());
  for (std::size_t c = 0; c < values.size(); ++c)
    values[c] = acf.values[c] / static_cast<double>(acf.n) * static_cast<double>(realm.k);
  return values;
}

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

std::string plot_csv(const PlotSeries& series) {
  std::string out = "x,y\n";
  for (const auto& [x, y] : series.points) out += csv_double(x) + "," + csv_double(y) + "\n";
  return out;
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (!cfg.seed_set) throw DataError("seed is mandatory (--seed); wall-clock seeding is not supported");
  if (cfg.no_below < 0) throw DataError("no_below must be >= 0");
  if (!(cfg.no_above > 0.0) || cfg.no_above > 1.0) throw DataError("no_above must be in (0,1]");
  if (cfg.k_min < 1 || cfg.k_max < cfg.k_min) throw DataError("bad K range");
  if (cfg.train.iterations < 1 || cfg.train.burn_in < 0 || cfg.train.sample_lag < 1)
    throw DataError("bad training schedule");
  if (cfg.fold_in_iterations < 1) throw DataError("fold_in_iterations must be >= 1");
  if (cfg.coherence_window < 1) throw DataError("coherence_window must be >= 1");
  if (!(cfg.keeper_threshold > 0.0) || cfg.keeper_threshold > 1.0)
    throw DataError("keeper_threshold must be in (0,1]");
  if (!(cfg.leaver_threshold > 0.0) || cfg.leaver_threshold >= 1.0)
    throw DataError("leaver_threshold must be in (0,1)");
  if (cfg.split_margin < 0.0) throw DataError("split_margin must be >= 0");
  if (cfg.top_n < 1) throw DataError("top_n must be >= 1");
  if (cfg.min_half_issues < 1) throw DataError("min_half_issues must be >= 1");
  if (cfg.jobs < 1) throw DataError("jobs must be >= 1");
  if (cfg.windowing != "yearly" && cfg.windowing != "quarterly")
    throw DataError("windowing must be \"yearly\" or \"quarterly\"");
}

void run_ingest(const RunConfig& cfg) {
  validate_config(cfg);
  if (cfg.input.empty()) throw DataError("no input file configured");
  ParseResult parsed = parse_export(cfg.input);

  StopwordSet stop_storage;
  LemmaTable lemma_storage;
  CorpusOptions opt = corpus_options(cfg, stop_storage, lemma_storage);
  std::vector<ProjectCorpus> corpora = build_corpora(parsed, opt);

  OutputWriter writer(cfg.output);
  std::string errors = "scope,line,message\n";
  for (const auto& e : parsed.errors)
    errors += "parse," + csv_int(static_cast<std::int64_t>(e.line)) + "," + csv_escape(e.message) + "\n";
  for (const auto& corpus : corpora) {
    for (const auto& e : corpus.record_errors)
      errors += csv_escape(corpus.project) + "," + csv_int(static_cast<std::int64_t>(e.line)) +
                "," + csv_escape(e.message) + "\n";
  }
  writer.write_file("ingest_errors.csv", errors);
  for (const auto& corpus : corpora) {
    writer.write_file(sanitize_key(corpus.project) + "/corpus.json", corpus_to_json(corpus));
    log_info("ingested project " + corpus.project + " (" + std::to_string(corpus.issues.size()) +
             " issues, " + std::to_string(corpus.comments.size()) + " comments)");
  }
}

void run_select_k(const RunConfig& cfg) {
  validate_config(cfg);
  auto projects = project_dirs(cfg);
  OutputWriter writer(cfg.output);
  for (const auto& dir : projects) {
    ProjectCorpus corpus = corpus_from_json(read_file(fs::path(cfg.output) / dir / "corpus.json"));
    std::string csv;
    try {
      VectorizedCorpus vectorized = vectorize(corpus, cfg.filter_issues_only);
      SelectKOptions opt;
      opt.k_min = cfg.k_min;
      opt.k_max = cfg.k_max;
      opt.alpha = cfg.alpha;
      opt.beta = cfg.beta;
      opt.train = cfg.train;
      opt.coherence_window = cfg.coherence_window;
      opt.jobs = cfg.jobs;
      KSelectionResult result = select_k(vectorized, project_seed(cfg, corpus.project), opt);
      csv = select_k_csv(result);
      log_info(corpus.project + ": chosen K = " + std::to_string(result.chosen_k));
    } catch (const NotAnalyzableError& e) {
      csv = "K,coherence,overlap,score,chosen\n";
      log_info(corpus.project + ": not analyzable (" + std::string(e.what()) + ")");
    }
    writer.write_file(dir + "/select_k.csv", csv);
  }
}

namespace {

// Shared loader for the train/realm/analyze stages.
struct ProjectState {
  std::string dir;
  ProjectCorpus corpus;
  bool analyzable = false;
  int chosen_k = 0;
  VectorizedCorpus vectorized;
};

ProjectState load_state(const RunConfig& cfg, const std::string& dir) {
  ProjectState state;
  state.dir = dir;
  state.corpus = corpus_from_json(read_file(fs::path(cfg.output) / dir / "corpus.json"));
  fs::path select_path = fs::path(cfg.output) / dir / "select_k.csv";
  if (!file_exists(select_path)) throw DataError("missing select_k.csv for " + dir + "; run select-k first");
  try {
    state.chosen_k = chosen_k_from_csv(read_file(select_path));
    state.vectorized = vectorize(state.corpus, cfg.filter_issues_only);
    state.analyzable = true;
  } catch (const DataError&) {
    state.analyzable = false;  // header-only select_k.csv or empty vocabulary
  }
  return state;
}

LdaModel train_final_model(const RunConfig& cfg, const ProjectState& state) {
  std::vector<Document> docs = state.vectorized.documents;
  if (cfg.issues_only_training) {
    std::erase_if(docs, [](const Document& d) { return d.kind != DocKind::Issue; });
    if (docs.empty()) throw DataError(state.corpus.project + ": no issues to train on");
  }
  if (cfg.tfidf_pseudocounts) docs = tfidf_pseudocount_documents(docs, state.vectorized.vocab);
  std::uint64_t seed = project_seed(cfg, state.corpus.project) ^
                       static_cast<std::uint64_t>(state.chosen_k);
  return train_lda(docs, state.chosen_k, cfg.alpha, cfg.beta, cfg.train, seed,
                   state.vectorized.vocab.terms);
}

}  // namespace

void run_train(const RunConfig& cfg) {
  validate_config(cfg);
  auto projects = project_dirs(cfg);
  OutputWriter writer(cfg.output);
  parallel_for(projects.size(), cfg.jobs, [&](std::size_t i) {
    ProjectState state = load_state(cfg, projects[i]);
    if (!state.analyzable) return;
    LdaModel model = train_final_model(cfg, state);
    writer.write_file(state.dir + "/model.json", model_to_json(model));
    if (cfg.model_binary) writer.write_file(state.dir + "/model.bin", model_to_binary(model));
  });
}

void run_realm(const RunConfig& cfg) {
  validate_config(cfg);
  auto projects = project_dirs(cfg);
  OutputWriter writer(cfg.output);
  parallel_for(projects.size(), cfg.jobs, [&](std::size_t i) {
    const auto& dir = projects[i];
    fs::path model_path = fs::path(cfg.output) / dir / "model.json";
    if (!file_exists(model_path)) return;  // not analyzable
    ProjectState state = load_state(cfg, dir);
    if (!state.analyzable) return;
    LdaModel model = model_from_json(read_file(model_path));
    if (model.terms != state.vectorized.vocab.terms)
      throw DataError(dir + ": model vocabulary does not match the ingested corpus");
    RealmBuildOptions opt;
    opt.windowing = windowing_of(cfg);
    opt.fold_in_iterations = cfg.fold_in_iterations;
    opt.seed = derive_seed(project_seed(cfg, state.corpus.project), 2);
    ConceptRealm realm = build_realm(state.corpus, state.vectorized, model, opt);
    writer.write_file(dir + "/realm.jsonl", realm_to_jsonl(realm));
  });
}

namespace {

struct ProjectAnalysis {
  std::string dir;
  std::string project;
  bool present = false;
  int age_years = 0;
  int first_year = 0;
  std::optional<AlignmentResult> alignment;
  std::optional<double> volatility;
  std::vector<std::pair<std::string, double>> mse_rows;  // (window label, mse)
  std::vector<KeeperCount> keepers;
  std::vector<LeaverEvent> leavers;
  std::vector<TurnoverImpact> impacts;
  std::optional<int> top_concept;
  std::optional<double> entropy;
  std::optional<double> gap;
  std::optional<double> mrr;
  int n_assigned = 0;
  // per-event scatter data for the figures
  std::vector<std::pair<double, double>> fig9, fig10, fig11, fig12;
  std::vector<PlotSeries> per_project_series;
};

ProjectAnalysis analyze_project(const RunConfig& cfg, const std::string& dir) {
  ProjectAnalysis a;
  a.dir = dir;
  fs::path realm_path = fs::path(cfg.output) / dir / "realm.jsonl";
  if (!file_exists(realm_path)) {
    ProjectCorpus corpus = corpus_from_json(read_file(fs::path(cfg.output) / dir / "corpus.json"));
    a.project = corpus.project;
    a.age_years = project_age_years(corpus);
    return a;
  }
  ProjectState state = load_state(cfg, dir);
  ConceptRealm realm = realm_from_jsonl(read_file(realm_path));
  a.present = true;
  a.project = state.corpus.project;
  a.age_years = project_age_years(state.corpus);
  auto years = realm.years();
  a.first_year = years.empty() ? 0 : years.front();

  // alignment on a seeded-random eligible year
  auto eligible = alignment_eligible_years(state.corpus, cfg.min_half_issues);
  if (!eligible.empty()) {
    SplitMix64 pick(derive_seed(project_seed(cfg, a.project), 3));
    int year = eligible[pick.next_below(static_cast<std::uint32_t>(eligible.size()))];
    AlignmentOptions opt;
    opt.min_half_issues = cfg.min_half_issues;
    opt.top_n = cfg.top_n;
    opt.k = state.chosen_k;
    opt.alpha = cfg.alpha;
    opt.beta = cfg.beta;
    opt.train = cfg.train;
    opt.fold_in_iterations = cfg.fold_in_iterations;
    opt.no_below = state.corpus.no_below;
    opt.no_above = state.corpus.no_above;
    a.alignment = evaluate_alignment(state.corpus, year, derive_seed(project_seed(cfg, a.project), 4), opt);
  }

  a.volatility = concept_volatility(realm);

  Windowing w = windowing_of(cfg);
  if (w == Windowing::Yearly) {
    for (int y : years) {
      if (auto mse = issue_comment_mse(realm, year_span(y)))
        a.mse_rows.emplace_back(std::to_string(y), *mse);
    }
  } else {
    for (auto q : realm.quarter_indices()) {
      if (auto mse = issue_comment_mse(realm, quarter_span(q)))
        a.mse_rows.emplace_back(quarter_label(q), *mse);
    }
  }

  for (int y : years) {
    if (auto keepers = count_keepers(realm, y, cfg.keeper_threshold)) a.keepers.push_back(*keepers);
  }

  a.leavers = detect_leavers(realm, cfg.leaver_threshold);
  for (const auto& leaver : a.leavers) {
    TurnoverImpact impact = turnover_impact(realm, leaver);
    double gap_event = impact.diff_strongest - impact.median_diff;
    a.fig9.emplace_back(impact.median_diff, impact.diff_strongest);
    a.fig10.emplace_back(impact.median_diff, impact.diff_weakest);
    if (auto ent = distribution_entropy(realm, impact.strongest_concept, realm.full_span())) {
      if (impact.diff_strongest < 0.0) {
        a.fig11.emplace_back(gap_event, *ent);
      } else {
        a.fig12.emplace_back(gap_event, *ent);
      }
    }
    a.impacts.push_back(std::move(impact));
  }

  a.top_concept = project_top_concept(realm);
  if (a.top_concept)
    a.entropy = distribution_entropy(realm, *a.top_concept, realm.full_span());
  a.gap = project_gap(realm);

  std::vector<std::pair<std::string, std::string>> assignments;
  for (const auto& issue : state.corpus.issues) {
    if (issue.assignee) assignments.emplace_back(issue.id, *issue.assignee);
  }
  a.n_assigned = static_cast<int>(assignments.size());
  a.mrr = mean_reciprocal_rank(assignments, realm, realm.full_span());

  // fig06: yearly issue-level frequency series, one file per concept
  for (int c = 0; c < realm.k; ++c) {
    PlotSeries series;
    series.name = "fig06_" + dir + "_concept" + std::to_string(c) + ".csv";
    for (int y : years) {
      if (auto f = issue_frequency(realm, year_span(y)))
        series.points.emplace_back(static_cast<double>(y), f->values[static_cast<std::size_t>(c)]);
    }
    a.per_project_series.push_back(std::move(series));
  }
  // fig13: comment-level team frequency at the configured windowing
  for (int c = 0; c < realm.k; ++c) {
    PlotSeries series;
    series.name = "fig13_" + dir + "_concept" + std::to_string(c) + ".csv";
    if (w == Windowing::Yearly) {
      for (int y : years) {
        if (auto f = team_comment_frequency(realm, year_span(y)))
          series.points.emplace_back(static_cast<double>(y), (*f)[static_cast<std::size_t>(c)]);
      }
    } else {
      for (auto q : realm.quarter_indices()) {
        if (auto f = team_comment_frequency(realm, quarter_span(q)))
          series.points.emplace_back(static_cast<double>(q), (*f)[static_cast<std::size_t>(c)]);
      }
    }
    a.per_project_series.push_back(std::move(series));
  }
  return a;
}

void write_project_analysis(OutputWriter& writer, const ProjectAnalysis& a, SplitLabel label,
                            double keeper_threshold) {
  std::string alignment =
      "project,year,n_test_issues,mean_assignee_score,mean_active_score,mean_diff,accuracy,"
      "t_statistic,df,p_value,degenerate_variance\n";
  if (a.alignment) {
    const auto& r = *a.alignment;
    alignment += csv_escape(r.project) + "," + csv_int(r.year) + "," + csv_int(r.n_test_issues) +
                 "," + csv_double(r.mean_assignee_score) + "," + csv_double(r.mean_active_score) +
                 "," + csv_double(r.mean_diff) + "," + csv_double(r.accuracy) + "," +
                 csv_double(r.t_statistic) + "," + csv_int(r.degrees_of_freedom) + "," +
                 csv_double(r.p_value) + "," + (r.degenerate_variance ? "1" : "0") + "\n";
  }
  writer.write_file(a.dir + "/alignment.csv", alignment);

  std::string volatility = "project,age_years,volatility_p75\n";
  if (a.volatility) {
    volatility += csv_escape(a.project) + "," + csv_int(a.age_years) + "," +
                  csv_double(*a.volatility) + "\n";
  }
  writer.write_file(a.dir + "/volatility.csv", volatility);

  std::string mse = "project,window,mse\n";
  for (const auto& [label_str, value] : a.mse_rows)
    mse += csv_escape(a.project) + "," + label_str + "," + csv_double(value) + "\n";
  writer.write_file(a.dir + "/mse.csv", mse);

  std::string keepers = "project,year,concept,threshold,count\n";
  for (const auto& k : a.keepers) {
    keepers += csv_escape(k.project) + "," + csv_int(k.year) + "," + csv_int(k.concept_id) + "," +
               csv_double(keeper_threshold) + "," + csv_int(k.count) + "\n";
  }
  writer.write_file(a.dir + "/keepers.csv", keepers);

  std::string leavers = "project,developer,quarter,trailing_avg,comment_rank\n";
  for (const auto& l : a.leavers) {
    leavers += csv_escape(a.project) + "," + csv_escape(l.developer) + "," +
               quarter_label(l.departure_quarter) + "," + csv_double(l.trailing_avg) + "," +
               csv_int(l.comment_rank) + "\n";
  }
  writer.write_file(a.dir + "/leavers.csv", leavers);

  std::string impact =
      "project,developer,quarter,strongest_concept,weakest_concept,diff_strongest,diff_weakest,"
      "median_diff,quadrant_strongest,quadrant_weakest\n";
  for (const auto& im : a.impacts) {
    impact += csv_escape(a.project) + "," + csv_escape(im.leaver.developer) + "," +
              quarter_label(im.leaver.departure_quarter) + "," + csv_int(im.strongest_concept) +
              "," + csv_int(im.weakest_concept) + "," + csv_double(im.diff_strongest) + "," +
              csv_double(im.diff_weakest) + "," + csv_double(im.median_diff) + "," +
              im.quadrant_strongest + "," + im.quadrant_weakest + "\n";
  }
  writer.write_file(a.dir + "/impact.csv", impact);

  std::string entropy = "project,concept,window,top5_entropy,gap\n";
  if (a.top_concept && a.entropy && a.gap) {
    entropy += csv_escape(a.project) + "," + csv_int(*a.top_concept) + ",all," +
               csv_double(*a.entropy) + "," + csv_double(*a.gap) + "\n";
  }
  writer.write_file(a.dir + "/entropy.csv", entropy);

  std::string mrr = "project,window,split,n_assigned,mrr\n";
  if (a.mrr) {
    mrr += csv_escape(a.project) + ",all," + to_string(label) + "," + csv_int(a.n_assigned) +
           "," + csv_double(*a.mrr) + "\n";
  }
  writer.write_file(a.dir + "/mrr.csv", mrr);
}

}  // namespace

void run_analyze(const RunConfig& cfg) {
  validate_config(cfg);
  auto projects = project_dirs(cfg);
  OutputWriter writer(cfg.output);

  std::vector<ProjectAnalysis> analyses(projects.size());
  parallel_for(projects.size(), cfg.jobs,
               [&](std::size_t i) { analyses[i] = analyze_project(cfg, projects[i]); });

  // cross-project split labels over the gap metric
  std::vector<double> gaps;
  std::vector<std::size_t> gap_index;
  for (std::size_t i = 0; i < analyses.size(); ++i) {
    if (analyses[i].gap) {
      gaps.push_back(*analyses[i].gap);
      gap_index.push_back(i);
    }
  }
  std::vector<SplitLabel> labels = split_projects(gaps, cfg.split_margin);
  std::vector<SplitLabel> label_of(analyses.size(), SplitLabel::Neither);
  for (std::size_t j = 0; j < gap_index.size(); ++j) label_of[gap_index[j]] = labels[j];

  for (std::size_t i = 0; i < analyses.size(); ++i) {
    if (!analyses[i].present) continue;
    write_project_analysis(writer, analyses[i], label_of[i], cfg.keeper_threshold);
  }

  // figure data
  PlotSeries fig5{"fig05_volatility_by_age.csv", {}};
  PlotSeries fig7{"fig07_mse_by_age.csv", {}};
  PlotSeries fig8{"fig08_keepers_by_project_year.csv", {}};
  PlotSeries fig9{"fig09_impact_strongest.csv", {}};
  PlotSeries fig10{"fig10_impact_weakest.csv", {}};
  PlotSeries fig11{"fig11_entropy_negative.csv", {}};
  PlotSeries fig12{"fig12_entropy_positive.csv", {}};

  std::map<int, std::vector<double>> mse_by_age;
  for (const auto& a : analyses) {
    if (!a.present) continue;
    if (a.volatility) fig5.points.emplace_back(static_cast<double>(a.age_years), *a.volatility);
    if (!a.mse_rows.empty()) {
      double sum = 0.0;
      for (const auto& [label_str, v] : a.mse_rows) sum += v;
      mse_by_age[clamp_age_bracket(a.age_years)].push_back(sum / static_cast<double>(a.mse_rows.size()));
    }
    for (const auto& k : a.keepers)
      fig8.points.emplace_back(static_cast<double>(k.year - a.first_year + 1),
                               static_cast<double>(k.count));
    auto append = [](PlotSeries& dst, const std::vector<std::pair<double, double>>& src) {
      dst.points.insert(dst.points.end(), src.begin(), src.end());
    };
    append(fig9, a.fig9);
    append(fig10, a.fig10);
    append(fig11, a.fig11);
    append(fig12, a.fig12);
  }
  for (const auto& [age, values] : mse_by_age) {
    double sum = 0.0;
    for (double v : values) sum += v;
    fig7.points.emplace_back(static_cast<double>(age), sum / static_cast<double>(values.size()));
  }

  for (const auto* series : {&fig5, &fig7, &fig8, &fig9, &fig10, &fig11, &fig12})
    writer.write_file("plots/" + series->name, plot_csv(*series));
  for (const auto& a : analyses) {
    for (const auto& series : a.per_project_series)
      writer.write_file("plots/" + series.name, plot_csv(series));
  }
}

void run_report(const RunConfig& cfg) {
  validate_config(cfg);
  auto projects = project_dirs(cfg);
  OutputWriter writer(cfg.output);

  std::vector<ProjectSummary> summaries;
  for (const auto& dir : projects) {
    ProjectCorpus corpus = corpus_from_json(read_file(fs::path(cfg.output) / dir / "corpus.json"));
    ProjectSummary s;
    s.project = corpus.project;
    s.age_years = project_age_years(corpus);
    s.n_issues = static_cast<std::int64_t>(corpus.issues.size());
    s.n_comments = static_cast<std::int64_t>(corpus.comments.size());
    std::set<std::string> devs;
    for (const auto& c : corpus.comments) devs.insert(c.author);
    s.n_developers = static_cast<std::int64_t>(devs.size());

    fs::path base = fs::path(cfg.output) / dir;
    s.analyzable = file_exists(base / "model.json");
    if (s.analyzable) {
      try {
        s.chosen_k = chosen_k_from_csv(read_file(base / "select_k.csv"));
      } catch (const DataError&) {
        s.chosen_k = 0;
      }
    }
    auto has_rows = [&](const std::string& name) {
      fs::path p = base / name;
      if (!file_exists(p)) return false;
      std::string bytes = read_file(p);
      auto eol = bytes.find('\n');
      return eol != std::string::npos && eol + 1 < bytes.size();
    };
    for (const char* name : {"alignment", "volatility", "mse", "keepers", "leavers", "impact",
                             "entropy", "mrr"})
      s.available[name] = has_rows(std::string(name) + ".csv");
    summaries.push_back(std::move(s));
  }

  writer.write_file("summary.csv", summary_csv(summaries));
  writer.write_file("age_brackets.csv", brackets_csv(bracket_table(summaries)));
  writer.write_manifest();
}

void run_pipeline(const RunConfig& cfg) {
  run_ingest(cfg);
  run_select_k(cfg);
  run_train(cfg);
  run_realm(cfg);
  run_analyze(cfg);
  run_report(cfg);
}

}  // namespace conceptrealm
