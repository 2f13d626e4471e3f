// kwx: keyword extraction, evaluation and cross-lingual experiment planning.
//
// Exit codes: 0 success, 1 data or provider error, 2 usage error.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kwx/corpus.hpp"
#include "kwx/embed.hpp"
#include "kwx/error.hpp"
#include "kwx/eval.hpp"
#include "kwx/extractor.hpp"
#include "kwx/log.hpp"
#include "kwx/normalize.hpp"
#include "kwx/xling.hpp"

namespace fs = std::filesystem;

namespace {

using namespace kwx;

struct NormFlags {
  std::string lang;
  std::string resources;
  std::string mode;
  std::string lemmas;
  std::string stopwords;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--lang", lang, "Language code of the corpus")->required();
    cmd->add_option("--resources", resources, "Directory with stopwords.<lang>.txt / lemmas.<lang>.tsv overrides");
    cmd->add_option("--norm", mode, "Normalizer mode: porter, latvian, lemma, identity");
    cmd->add_option("--lemmas", lemmas, "Lemma table (surface<TAB>lemma)");
    cmd->add_option("--stopwords", stopwords, "Stopword list, one word per line");
  }

  Normalizer build() const {
    Normalizer base = Normalizer::for_language(lang, resources);
    if (mode.empty() && lemmas.empty() && stopwords.empty()) return base;
    StopwordSet words = stopwords.empty() ? base.stopwords() : load_stopwords(stopwords);
    NormMode m = !mode.empty() ? parse_norm_mode(mode) : (!lemmas.empty() ? NormMode::lemma_table : base.mode());
    std::optional<LemmaTable> table;
    if (m == NormMode::lemma_table) {
      fs::path path = lemmas;
      if (path.empty() && !resources.empty()) path = fs::path(resources) / ("lemmas." + lang + ".tsv");
      if (!path.empty()) table = LemmaTable::load_tsv(path);
    }
    return Normalizer(lang, m, std::move(words), std::move(table));
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

LanguageSet language_set(const std::string& flag) {
  return flag.empty() ? LanguageSet::six_news_languages() : LanguageSet(split_list(flag));
}

std::vector<Document> read_corpus(const std::string& path, const std::string& lang) {
  const auto name = parse_corpus_file_name(path);
  return load_jsonl(path, lang, name ? name->split : Split::test);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to `path`, or stdout when it is empty or "-".
void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
  if (!out.flush()) throw DataError("failed writing '" + path + "'");
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// ---------------------------------------------------------------- extract

struct ExtractArgs {
  std::string method;
  NormFlags norm;
  std::string in;
  std::string out;
  std::size_t k = 10;
  unsigned jobs = 1;
  std::string embeddings;
  std::string provider_url;
  int keybert_ngrams = 1;
  std::string pos;
};

int run_extract(const ExtractArgs& args) {
  if (!is_known_extractor(args.method)) {
    make_extractor(args.method, {});  // throws with the list of known names
  }
  if (args.method == "keybert" && args.embeddings.empty() && args.provider_url.empty()) {
    throw UsageError("provider required: keybert needs --embeddings or --provider-url");
  }
  if (args.jobs == 0) throw UsageError("--jobs must be at least 1");

  ExtractorSettings settings;
  settings.k = args.k;
  settings.keybert_max_ngram = args.keybert_ngrams;
  if (!args.embeddings.empty()) {
    settings.provider = std::make_shared<FileEmbeddingProvider>(FileEmbeddingProvider::load(args.embeddings));
  } else if (!args.provider_url.empty()) {
    settings.provider = std::make_shared<HttpEmbeddingProvider>(args.provider_url);
  }
  if (!args.pos.empty()) settings.pos_tags = std::make_shared<PosSidecar>(load_pos_sidecar(args.pos));
  const auto extractor = make_extractor(args.method, settings);

  const Normalizer normalizer = args.norm.build();
  const std::vector<Document> docs = read_corpus(args.in, args.norm.lang);

  std::vector<std::string> lines(docs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= docs.size()) return;
      try {
        Prediction p{docs[i].id, extractor->extract(docs[i], normalizer)};
        std::ostringstream line;
        write_prediction(line, p);
        lines[i] = line.str();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(docs.size());
        return;
      }
    }
  };
  const unsigned n_threads = std::min<std::size_t>(args.jobs, std::max<std::size_t>(docs.size(), 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::string content;
  for (const std::string& line : lines) content += line;
  write_output(args.out, content);
  for (const std::string& note : extractor->notes()) log::info(note);
  log::info(args.method + ": " + std::to_string(docs.size()) + " document(s) written to " + args.out);
  return 0;
}

// ------------------------------------------------------------------- eval

struct EvalArgs {
  std::string pred;
  std::string in;
  NormFlags norm;
  std::size_t k = 10;
  std::string out;
};

int run_eval(const EvalArgs& args) {
  if (args.k == 0) throw UsageError("--k must be positive");
  const Normalizer normalizer = args.norm.build();
  const std::vector<Document> docs = read_corpus(args.in, args.norm.lang);
  const MetricsReport report = evaluate_run(fs::path(args.pred), docs, normalizer, args.k);
  if (!args.out.empty()) write_output(args.out, report_to_json(report));

  const std::string k = std::to_string(report.k);
  const AggregateMetrics& a = report.aggregate;
  std::cout << "documents scored " << report.per_doc.size() << ", omitted " << report.omitted
            << " (macro average)\n"
            << "precision@" << k << "  " << fixed4(a.precision) << "   fixed-k " << fixed4(a.precision_fixed_k) << '\n'
            << "recall@" << k << "     " << fixed4(a.recall) << '\n'
            << "f1@" << k << "         " << fixed4(a.f1) << "   fixed-k " << fixed4(a.f1_fixed_k) << '\n';
  return 0;
}

// ------------------------------------------------------------------ stats

int run_stats(const std::string& in, const NormFlags& norm, const std::string& out) {
  const Normalizer normalizer = norm.build();
  const std::vector<Document> docs = read_corpus(in, norm.lang);
  const CorpusStats stats = compute_stats(docs, normalizer);
  nlohmann::ordered_json obj;
  obj["lang"] = norm.lang;
  obj["size"] = stats.size;
  obj["kw_per_doc"] = stats.kw_per_doc;
  obj["kw_present"] = stats.kw_present;
  obj["n_keywords"] = stats.n_keywords;
  obj["n_present"] = stats.n_present;
  write_output(out, obj.dump(2) + "\n");
  return 0;
}

// ------------------------------------------------------------------- plan

struct PlanArgs {
  std::string regime;
  std::string test;
  std::string train;
  std::string langs;
  std::string data_root = ".";
  std::string out;
  bool allow_missing = false;
  std::size_t tuples = 0;
};

int run_plan(const PlanArgs& args) {
  const LanguageSet langs = language_set(args.langs);
  if (args.tuples > 0) {
    std::string content;
    for (const LanguageTuple& t : enumerate_tuples(langs, args.tuples)) content += join_langs(t) + "\n";
    write_output(args.out, content);
    return 0;
  }
  if (args.regime.empty() || args.test.empty()) throw UsageError("plan needs --regime and --test (or --tuples)");
  ManifestOptions options;
  options.check_files = !args.allow_missing;
  options.custom_train = split_list(args.train);
  const Regime regime = parse_regime(args.regime);
  if (regime != Regime::custom && !options.custom_train.empty()) {
    throw UsageError("--train is only valid with --regime custom");
  }
  write_output(args.out, manifest_to_json(build_manifest(regime, langs, args.test, args.data_root, options)));
  return 0;
}

// ----------------------------------------------------------------- matrix

int run_matrix(const std::string& reports, const std::string& langs_flag, const std::string& out) {
  const LanguageSet langs = language_set(langs_flag);
  std::map<std::pair<std::string, std::string>, double> f1;
  for (const std::string& train : langs.langs()) {
    for (const std::string& test : langs.langs()) {
      const fs::path path = fs::path(reports) / report_file_name(train, test);
      if (!fs::exists(path)) {
        throw DataError("missing report for pair (train=" + train + ", test=" + test + "): " + path.string());
      }
      f1[{train, test}] = report_from_json(read_file(path), path.string()).aggregate.f1;
    }
  }
  std::ostringstream csv;
  write_matrix_csv(csv, heatmap_matrix(f1, langs));
  write_output(out, csv.str());
  return 0;
}

// ---------------------------------------------------------------- cluster

int run_cluster(const std::string& matrix, const std::string& linkage, const std::string& out) {
  const Linkage link = parse_linkage(linkage);
  std::ifstream in(matrix);
  if (!in) throw DataError("cannot open matrix '" + matrix + "'");
  const AffinityMatrix m = read_matrix_csv(in, matrix);
  write_output(out, dendrogram_to_json(agglomerative_cluster(m, link)));
  return 0;
}

// ------------------------------------------------------------------ curve

// Lines of `<lang+lang+...>,<f1>`; a first line whose f1 is not a number is a header.
std::vector<TupleResult> read_curve_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open results '" + path + "'");
  std::vector<TupleResult> results;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    const std::string at = path + ": line " + std::to_string(line_no);
    if (comma == std::string::npos) throw DataError("expected '<tuple>,<f1>' at " + at);
    const std::string value = line.substr(comma + 1);
    char* end = nullptr;
    const double f1 = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
      if (results.empty() && line_no == 1) continue;
      throw DataError("bad F1 value '" + value + "' at " + at);
    }
    TupleResult r;
    std::istringstream tuple(line.substr(0, comma));
    std::string lang;
    while (std::getline(tuple, lang, '+')) {
      if (!lang.empty()) r.train_langs.push_back(lang);
    }
    r.f1 = f1;
    results.push_back(std::move(r));
  }
  return results;
}

int run_curve(const std::string& results, const std::string& test, const std::string& out) {
  write_output(out, curve_to_json(language_count_curve(read_curve_results(results), test), test));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilingual keyword extraction and evaluation"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract keywords for every document of a corpus");
  extract->add_option("--method", ex.method, "yake, kpminer, textrank, multipartite, rakun or keybert")->required();
  ex.norm.add_to(extract);
  extract->add_option("--in", ex.in, "Corpus JSONL")->required();
  extract->add_option("--out", ex.out, "Predictions JSONL")->required();
  extract->add_option("--k", ex.k, "Keywords per document")->capture_default_str();
  extract->add_option("--jobs", ex.jobs, "Worker threads")->capture_default_str();
  extract->add_option("--embeddings", ex.embeddings, "Embedding file for keybert");
  extract->add_option("--provider-url", ex.provider_url, "Embedding service endpoint for keybert");
  extract->add_option("--keybert-ngrams", ex.keybert_ngrams, "Longest keybert candidate (1..3)")->capture_default_str();
  extract->add_option("--pos", ex.pos, "POS sidecar JSONL for multipartite");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Score predictions against a corpus");
  eval->add_option("--pred", ev.pred, "Predictions JSONL")->required();
  eval->add_option("--in", ev.in, "Corpus JSONL")->required();
  ev.norm.add_to(eval);
  eval->add_option("--k", ev.k, "Cutoff")->capture_default_str();
  eval->add_option("--out", ev.out, "Metrics report JSON");

  std::string stats_in, stats_out;
  NormFlags stats_norm;
  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("--in", stats_in, "Corpus JSONL")->required();
  stats_norm.add_to(stats);
  stats->add_option("--out", stats_out, "Output JSON (default stdout)");

  PlanArgs pl;
  auto* plan = app.add_subcommand("plan", "Write an experiment manifest or list language tuples");
  plan->add_option("--regime", pl.regime, "mon, loo, mul or custom");
  plan->add_option("--test", pl.test, "Test language");
  plan->add_option("--train", pl.train, "Comma-separated training languages (custom regime)");
  plan->add_option("--langs", pl.langs, "Comma-separated language set (default en,sl,hr,lv,et,ru)");
  plan->add_option("--data-root", pl.data_root, "Directory of <lang>.<split>.jsonl files")->capture_default_str();
  plan->add_option("--out", pl.out, "Output file (default stdout)");
  plan->add_flag("--allow-missing", pl.allow_missing, "Do not require the split files to exist");
  plan->add_option("--tuples", pl.tuples, "List all tuples of this size instead");

  std::string reports, matrix_langs, matrix_out;
  auto* matrix = app.add_subcommand("matrix", "Build the cross-lingual F1 matrix from metrics reports");
  matrix->add_option("--reports", reports, "Directory of <train>.<test>.metrics.json files")->required();
  matrix->add_option("--langs", matrix_langs, "Comma-separated language set");
  matrix->add_option("--out", matrix_out, "Output CSV (default stdout)");

  std::string matrix_in, linkage = "average", cluster_out;
  auto* cluster = app.add_subcommand("cluster", "Agglomerative clustering of an affinity matrix");
  cluster->add_option("--matrix", matrix_in, "Matrix CSV")->required();
  cluster->add_option("--linkage", linkage, "average, single or complete")->capture_default_str();
  cluster->add_option("--out", cluster_out, "Dendrogram JSON (default stdout)");

  std::string curve_in, curve_test, curve_out;
  auto* curve = app.add_subcommand("curve", "Group results by number of training languages");
  curve->add_option("--results", curve_in, "CSV of <lang+lang...>,<f1>")->required();
  curve->add_option("--test", curve_test, "Test language")->required();
  curve->add_option("--out", curve_out, "Output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*extract) return run_extract(ex);
    if (*eval) return run_eval(ev);
    if (*stats) return run_stats(stats_in, stats_norm, stats_out);
    if (*plan) return run_plan(pl);
    if (*matrix) return run_matrix(reports, matrix_langs, matrix_out);
    if (*cluster) return run_cluster(matrix_in, linkage, cluster_out);
    if (*curve) return run_curve(curve_in, curve_test, curve_out);
  } catch (const UsageError& e) {
    std::cerr << "kwx: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "kwx: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "kwx: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
