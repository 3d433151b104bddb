// authorid: batch CLI for the authorship attribution toolkit.
//
// Subcommands: split, train, evaluate, predict, select-sweep, error-cells,
// train-tagger. Exit codes: 0 success, 1 usage/config error, 2 data error,
// 3 training error. Primary outputs are written atomically (temp file +
// rename), so a failed run never leaves a partial file behind.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "authorid/config.hpp"
#include "authorid/corpus.hpp"
#include "authorid/error.hpp"
#include "authorid/eval.hpp"
#include "authorid/model_io.hpp"
#include "authorid/parallel.hpp"
#include "authorid/selection.hpp"
#include "authorid/svm.hpp"
#include "authorid/tagger.hpp"
#include "authorid/textproc.hpp"

namespace fs = std::filesystem;
using namespace authorid;

namespace {

void atomic_write(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw data_error("cannot write file: " + path.string());
    out << content;
    if (!out) throw data_error("short write: " + path.string());
  }
  fs::rename(tmp, path);
}

std::string format_accuracy(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

struct LoadedSubset {
  std::vector<std::string> ids;
  std::vector<std::size_t> labels;
  std::vector<AnalyzedDocument> docs;
  std::vector<std::pair<std::string, std::string>> id_author;
};

// Analyzes (and optionally tags) one subset of the corpus in parallel.
LoadedSubset analyze_subset(const Corpus& corpus,
                            const std::vector<std::string>& ids,
                            const TaggerModel* tagger) {
  std::map<std::string, const Document*> by_id;
  for (const auto& d : corpus.documents) by_id[d.id] = &d;

  LoadedSubset out;
  out.ids = ids;
  out.docs.resize(ids.size());
  out.labels.resize(ids.size());
  out.id_author.resize(ids.size());
  std::vector<const Document*> docs(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto it = by_id.find(ids[i]);
    if (it == by_id.end())
      throw data_error("split references a document missing from the corpus: " +
                       ids[i]);
    docs[i] = it->second;
  }
  parallel_for(ids.size(), [&](std::size_t i) {
    out.docs[i] = analyze(docs[i]->text);
    if (tagger) tag_document(*tagger, out.docs[i]);
    out.labels[i] = corpus.author_index(docs[i]->author);
    out.id_author[i] = {docs[i]->id, docs[i]->author};
  });
  return out;
}

std::optional<TaggerModel> maybe_load_tagger(const FeatureConfig& features,
                                             const std::string& path,
                                             const char* who) {
  if (!features.wants_pos()) return std::nullopt;
  if (path.empty())
    throw config_error(std::string(who) +
                       ": POS features requested but no tagger_model is set");
  return load_tagger(path);
}

// ----------------------------------------------------------------------
// split
// ----------------------------------------------------------------------

int cmd_split(const ExperimentConfig& config, const std::string& out_path) {
  Corpus corpus = load_corpus(config.corpus_root);
  SplitAssignment split = make_split(corpus, config.ratios, config.split_seed);
  atomic_write(out_path, split_to_json(split) + "\n");

  std::map<std::string, std::array<std::size_t, 3>> per_author;
  const std::vector<std::string>* parts[3] = {
      &split.development, &split.cross_validation, &split.holdout};
  for (std::size_t s = 0; s < 3; ++s) {
    for (const auto& id : *parts[s]) {
      const Document* doc = corpus.find(id);
      ++per_author[doc->author][s];
    }
  }
  std::cout << "subset sizes: development=" << split.development.size()
            << " cross-validation=" << split.cross_validation.size()
            << " holdout=" << split.holdout.size() << "\n";
  std::cout << "author\tdevelopment\tcross-validation\tholdout\n";
  for (const auto& [author, counts] : per_author)
    std::cout << author << '\t' << counts[0] << '\t' << counts[1] << '\t'
              << counts[2] << "\n";
  std::cout << "split written to " << out_path << "\n";
  return 0;
}

// ----------------------------------------------------------------------
// train
// ----------------------------------------------------------------------

int cmd_train(const ExperimentConfig& config, const std::string& split_path,
              const std::string& subset, const std::string& out_path,
              const std::string& matrix_path, const std::string& scores_path) {
  Corpus corpus = load_corpus(config.corpus_root);
  SplitAssignment split = load_split(split_path);
  auto tagger = maybe_load_tagger(config.features, config.tagger_model, "train");

  LoadedSubset data =
      analyze_subset(corpus, split.subset(subset),
                     tagger ? &*tagger : nullptr);

  FeatureSpace space = build_space(data.docs, config.features);
  std::cout << "feature space size: " << space.size() << "\n";

  std::vector<SparseVector> vectors(data.docs.size());
  parallel_for(data.docs.size(), [&](std::size_t i) {
    vectors[i] = vectorize(data.docs[i], space);
  });

  if (!matrix_path.empty()) {
    // SVM-light-style sparse rows of the unselected space.
    std::ostringstream out;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      out << data.ids[i];
      for (const auto& [col, val] : vectors[i].entries)
        out << '\t' << col << ':' << val;
      out << '\n';
    }
    atomic_write(matrix_path, out.str());
    std::cout << "feature matrix written to " << matrix_path << "\n";
  }

  std::optional<SelectedSpace> selection;
  std::size_t dim = space.size();
  const bool need_scores =
      (config.selection_n && *config.selection_n < dim) || !scores_path.empty();
  if (need_scores) {
    FeatureScores scores =
        chi_squared_scores(vectors, data.labels, corpus.authors.size(), dim);
    if (!scores_path.empty()) {
      std::ostringstream out;
      out << "column\tkey\tchi2\n";
      for (std::size_t c = 0; c < space.size(); ++c)
        out << c << '\t' << space.keys()[c].to_string() << '\t'
            << scores.scores[c] << '\n';
      atomic_write(scores_path, out.str());
      std::cout << "chi-squared scores written to " << scores_path << "\n";
    }
    if (config.selection_n && *config.selection_n < dim) {
      selection = select_top_n(space, scores, *config.selection_n,
                               config.chi2_exempt_stylometric);
      for (auto& v : vectors) v = project(v, *selection);
      dim = selection->size();
      std::cout << "selected features: " << dim << "\n";
    }
  }

  LinearModel model =
      train_ovr(dim, vectors, data.labels, corpus.authors, config.train);
  model.space = std::move(space);
  model.selection = std::move(selection);
  model.tagger_ref = config.features.wants_pos() ? config.tagger_model : "";
  model.train_subset = subset;

  atomic_write(out_path, model_to_json(model) + "\n");
  std::cout << "model written to " << out_path << "\n";
  return 0;
}

// ----------------------------------------------------------------------
// evaluate
// ----------------------------------------------------------------------

PipelineConfig pipeline_from_model(const LinearModel& model) {
  PipelineConfig p;
  p.features = model.space.config();
  if (model.selection) p.selection_n = model.selection->kept.size();
  p.train = model.params;
  return p;
}

EvalReport evaluate_plain(const LinearModel& model, const LoadedSubset& data,
                          const std::vector<std::string>& classes) {
  std::vector<std::size_t> predicted(data.docs.size());
  parallel_for(data.docs.size(), [&](std::size_t i) {
    SparseVector v = vectorize(data.docs[i], model.space);
    if (model.selection) v = project(v, *model.selection);
    predicted[i] = predict(model, v).label_index;
  });
  EvalReport report;
  report.matrix = confusion(data.labels, predicted, classes);
  report.accuracy = accuracy(report.matrix);
  report.kappa = kappa(report.matrix);
  return report;
}

// Per-chunk accuracies for the paired test on a plain subset: the subset is
// carved into stratified chunks shared by both models.
std::vector<double> chunk_accuracies(const LinearModel& model,
                                     const LoadedSubset& data,
                                     const FoldAssignment& chunks) {
  std::vector<double> correct(chunks.k, 0), total(chunks.k, 0);
  for (std::size_t i = 0; i < data.docs.size(); ++i) {
    SparseVector v = vectorize(data.docs[i], model.space);
    if (model.selection) v = project(v, *model.selection);
    std::size_t chunk = chunks.fold_of.at(data.ids[i]);
    total[chunk] += 1;
    if (predict(model, v).label_index == data.labels[i]) correct[chunk] += 1;
  }
  std::vector<double> acc(chunks.k);
  for (std::size_t c = 0; c < chunks.k; ++c)
    acc[c] = total[c] > 0 ? correct[c] / total[c] : 0.0;
  return acc;
}

void print_t_test(const TTestResult& t) {
  std::cout << "paired t-test: t=" << t.t << " p=" << t.p << " df=" << t.df
            << " mean_diff=" << t.mean_diff << "\n";
}

void append_ledger(const std::string& ledger, const std::string& name,
                   const EvalReport& report) {
  if (ledger.empty()) return;
  std::ofstream out(ledger, std::ios::app);
  if (!out) throw data_error("cannot append to ledger: " + ledger);
  out << name << '\t' << format_accuracy(report.accuracy) << '\t'
      << format_accuracy(report.kappa) << '\n';
}

int cmd_evaluate(const ExperimentConfig& config, const std::string& model_path,
                 const std::string& split_path, const std::string& subset,
                 std::size_t cv_k, bool paper_protocol,
                 const std::string& compare_path, const std::string& out_prefix,
                 const std::string& ledger, std::string name) {
  Corpus corpus = load_corpus(config.corpus_root);
  SplitAssignment split = load_split(split_path);
  LinearModel model = load_model(model_path);
  if (name.empty()) name = fs::path(model_path).stem().string();

  // Leakage guard: evaluating on a subset that overlaps a *different*
  // training subset is refused; evaluating a model on its own training
  // subset is allowed with a warning.
  const auto& eval_ids = split.subset(subset);
  if (!model.train_subset.empty() && cv_k == 0) {
    if (model.train_subset == subset) {
      std::cout << "warning: evaluating on the model's own training subset ("
                << subset << "); accuracy will be optimistic\n";
    } else {
      const auto& train_ids = split.subset(model.train_subset);
      std::set<std::string> train_set(train_ids.begin(), train_ids.end());
      for (const auto& id : eval_ids) {
        if (train_set.count(id))
          throw config_error("evaluate: subset '" + subset +
                             "' overlaps the model's training subset '" +
                             model.train_subset + "' (first shared id: " + id +
                             ")");
      }
    }
  }

  std::optional<TaggerModel> tagger;
  if (model.space.config().wants_pos()) {
    std::string path = config.tagger_model.empty() ? model.tagger_ref
                                                   : config.tagger_model;
    tagger = maybe_load_tagger(model.space.config(), path, "evaluate");
  }
  LoadedSubset data =
      analyze_subset(corpus, eval_ids, tagger ? &*tagger : nullptr);

  EvalReport report;
  std::optional<TTestResult> t_test;
  std::optional<EvalReport> other_report;

  if (cv_k > 0) {
    FoldAssignment folds = make_folds(data.id_author, cv_k, split.seed);
    PipelineConfig pipeline = pipeline_from_model(model);
    pipeline.paper_protocol = paper_protocol;
    report = cross_validate(data.docs, data.ids, data.labels, corpus.authors,
                            folds, pipeline);
    if (!compare_path.empty()) {
      LinearModel other = load_model(compare_path);
      PipelineConfig other_pipeline = pipeline_from_model(other);
      other_pipeline.paper_protocol = paper_protocol;
      other_report = cross_validate(data.docs, data.ids, data.labels,
                                    corpus.authors, folds, other_pipeline);
      t_test = paired_t_test(report.per_fold_accuracy,
                             other_report->per_fold_accuracy);
    }
  } else {
    report = evaluate_plain(model, data, corpus.authors);
    if (!compare_path.empty()) {
      LinearModel other = load_model(compare_path);
      other_report = evaluate_plain(other, data, corpus.authors);
      // Shared stratified chunks pair the two models' accuracies.
      std::size_t chunks = std::min<std::size_t>(10, eval_ids.size() / 2);
      if (chunks >= 2) {
        FoldAssignment assignment =
            make_folds(data.id_author, chunks, split.seed);
        report.per_fold_accuracy = chunk_accuracies(model, data, assignment);
        other_report->per_fold_accuracy =
            chunk_accuracies(other, data, assignment);
        t_test = paired_t_test(report.per_fold_accuracy,
                               other_report->per_fold_accuracy);
      }
    }
  }

  std::cout << "accuracy: " << format_accuracy(report.accuracy)
            << "  kappa: " << format_accuracy(report.kappa) << "\n";
  if (other_report) {
    std::cout << "compared model accuracy: "
              << format_accuracy(other_report->accuracy)
              << "  kappa: " << format_accuracy(other_report->kappa) << "\n";
  }
  if (t_test) print_t_test(*t_test);

  if (!out_prefix.empty()) {
    nlohmann::json j = nlohmann::json::parse(report_to_json(report));
    if (t_test) {
      j["t_test"] = {{"t", t_test->t},
                     {"p", t_test->p},
                     {"df", t_test->df},
                     {"mean_diff", t_test->mean_diff}};
      j["compared_accuracy"] = other_report->accuracy;
      j["compared_kappa"] = other_report->kappa;
    }
    atomic_write(out_prefix + ".json", j.dump() + "\n");
    atomic_write(out_prefix + ".txt", report_to_text(report));
    atomic_write(out_prefix + ".csv", matrix_to_csv(report.matrix));
    std::cout << "report written to " << out_prefix << ".{json,txt,csv}\n";
  }
  append_ledger(ledger, name, report);
  return 0;
}

// ----------------------------------------------------------------------
// predict
// ----------------------------------------------------------------------

int cmd_predict(const std::string& model_path, const std::string& input,
                const std::string& tagger_override) {
  LinearModel model = load_model(model_path);
  std::optional<TaggerModel> tagger;
  if (model.space.config().wants_pos()) {
    std::string path =
        tagger_override.empty() ? model.tagger_ref : tagger_override;
    tagger = maybe_load_tagger(model.space.config(), path, "predict");
  }

  std::vector<std::pair<std::string, std::string>> inputs;  // (docid, text)
  if (input.empty() || input == "-") {
    std::stringstream buffer;
    buffer << std::cin.rdbuf();
    inputs.emplace_back("stdin", buffer.str());
  } else {
    fs::path p = input;
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file()) files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        if (!in) throw data_error("cannot read input file: " + f.string());
        std::stringstream buffer;
        buffer << in.rdbuf();
        inputs.emplace_back(f.filename().string(), buffer.str());
      }
    } else {
      std::ifstream in(p, std::ios::binary);
      if (!in) throw data_error("cannot read input: " + input);
      std::stringstream buffer;
      buffer << in.rdbuf();
      inputs.emplace_back(p.filename().string(), buffer.str());
    }
  }

  for (const auto& [docid, text] : inputs) {
    if (!is_valid_utf8(text))
      throw data_error("encoding: input is not valid UTF-8: " + docid);
    AnalyzedDocument doc = analyze(text);
    if (tagger) tag_document(*tagger, doc);
    SparseVector v = vectorize(doc, model.space);
    if (model.selection) v = project(v, *model.selection);
    Prediction pred = predict(model, v);

    std::vector<std::size_t> order(pred.scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (pred.scores[a] != pred.scores[b])
        return pred.scores[a] > pred.scores[b];
      return a < b;
    });
    std::cout << docid << '\t' << pred.label << '\t';
    const std::size_t top = std::min<std::size_t>(5, order.size());
    for (std::size_t i = 0; i < top; ++i) {
      if (i) std::cout << ' ';
      std::cout << model.classes[order[i]] << '=' << pred.scores[order[i]];
    }
    std::cout << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------------
// select-sweep
// ----------------------------------------------------------------------

int cmd_select_sweep(const ExperimentConfig& config,
                     const std::string& split_path,
                     const std::string& train_subset,
                     const std::string& test_subset,
                     std::vector<std::size_t> ns, const std::string& out_path) {
  if (ns.empty()) ns = config.sweep_ns;
  if (ns.empty())
    throw config_error("select-sweep: no candidate sizes (set sweep_ns or --ns)");
  std::sort(ns.begin(), ns.end());

  Corpus corpus = load_corpus(config.corpus_root);
  SplitAssignment split = load_split(split_path);
  auto tagger =
      maybe_load_tagger(config.features, config.tagger_model, "select-sweep");
  LoadedSubset train = analyze_subset(corpus, split.subset(train_subset),
                                      tagger ? &*tagger : nullptr);
  LoadedSubset test = analyze_subset(corpus, split.subset(test_subset),
                                     tagger ? &*tagger : nullptr);

  FeatureSpace space = build_space(train.docs, config.features);
  std::cout << "feature space size: " << space.size() << "\n";

  std::vector<SparseVector> train_vecs(train.docs.size());
  parallel_for(train.docs.size(), [&](std::size_t i) {
    train_vecs[i] = vectorize(train.docs[i], space);
  });
  std::vector<SparseVector> test_vecs(test.docs.size());
  parallel_for(test.docs.size(), [&](std::size_t i) {
    test_vecs[i] = vectorize(test.docs[i], space);
  });

  FeatureScores scores = chi_squared_scores(train_vecs, train.labels,
                                            corpus.authors.size(), space.size());

  std::ostringstream tsv;
  tsv << "n\taccuracy\tkappa\n";
  for (std::size_t n : ns) {
    SelectedSpace selection =
        select_top_n(space, scores, n, config.chi2_exempt_stylometric);
    std::vector<SparseVector> tr(train_vecs.size()), te(test_vecs.size());
    for (std::size_t i = 0; i < train_vecs.size(); ++i)
      tr[i] = project(train_vecs[i], selection);
    for (std::size_t i = 0; i < test_vecs.size(); ++i)
      te[i] = project(test_vecs[i], selection);

    LinearModel model = train_ovr(selection.size(), tr, train.labels,
                                  corpus.authors, config.train);
    std::vector<std::size_t> predicted(te.size());
    parallel_for(te.size(), [&](std::size_t i) {
      predicted[i] = predict(model, te[i]).label_index;
    });
    ConfusionMatrix matrix = confusion(test.labels, predicted, corpus.authors);
    double acc = accuracy(matrix);
    double kap = kappa(matrix);
    tsv << n << '\t' << format_accuracy(acc) << '\t' << format_accuracy(kap)
        << '\n';
    std::cout << "n=" << n << " accuracy=" << format_accuracy(acc)
              << " kappa=" << format_accuracy(kap) << "\n";
  }
  if (!out_path.empty()) {
    atomic_write(out_path, tsv.str());
    std::cout << "sweep written to " << out_path << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------------
// error-cells
// ----------------------------------------------------------------------

int cmd_error_cells(const std::string& report_path, std::size_t top) {
  std::ifstream in(report_path, std::ios::binary);
  if (!in) throw data_error("cannot open report: " + report_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  EvalReport report = report_from_json(buffer.str());
  auto cells = error_cells(report.matrix, top);
  std::cout << "gold\tpredicted\tcount\n";
  for (const auto& cell : cells)
    std::cout << report.matrix.classes[cell.gold] << '\t'
              << report.matrix.classes[cell.predicted] << '\t' << cell.count
              << "\n";
  return 0;
}

// ----------------------------------------------------------------------
// train-tagger
// ----------------------------------------------------------------------

int cmd_train_tagger(const std::string& corpus_path,
                     const std::string& heldout_path, std::size_t epochs,
                     std::uint64_t seed, const std::string& out_path) {
  auto sentences = read_tagged_corpus(corpus_path);
  TaggerModel model = train_tagger(sentences, epochs, seed);
  std::cout << "training accuracy: "
            << format_accuracy(tagging_accuracy(model, sentences)) << "\n";
  if (!heldout_path.empty()) {
    auto heldout = read_tagged_corpus(heldout_path);
    std::cout << "held-out accuracy: "
              << format_accuracy(tagging_accuracy(model, heldout)) << "\n";
  }
  atomic_write(out_path, tagger_to_json(model) + "\n");
  std::cout << "tagger written to " << out_path << "\n";
  return 0;
}

ExperimentConfig load_config_with_overrides(
    const std::string& path, const std::vector<std::string>& overrides,
    unsigned threads_flag) {
  ExperimentConfig config =
      path.empty() ? ExperimentConfig{} : load_config(path);
  for (const auto& assignment : overrides) apply_override(config, assignment);
  if (threads_flag > 0) config.threads = threads_flag;
  set_max_threads(config.threads);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"authorship attribution toolkit"};
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads, "cap worker threads (0 = all cores)");

  // Every subcommand owns its option storage; CLI11 applies default_val at
  // registration time, so sharing variables across subcommands would leak
  // one command's defaults into another.
  struct SplitArgs {
    std::string config, out = "split.json";
    std::vector<std::string> overrides;
  } split_args;
  struct TrainArgs {
    std::string config, split, subset = "cross-validation";
    std::string out = "model.json", matrix, scores;
    std::vector<std::string> overrides;
  } train_args;
  struct EvalArgs {
    std::string config, model, split, subset = "holdout";
    std::string compare, out, ledger, name;
    std::vector<std::string> overrides;
    std::size_t cv_k = 0;
    bool paper_protocol = false;
  } eval_args;
  struct PredictArgs {
    std::string model, input, tagger;
  } predict_args;
  struct SweepArgs {
    std::string config, split, train_subset = "cross-validation";
    std::string test_subset = "development", out = "sweep.tsv";
    std::vector<std::string> overrides;
    std::vector<std::size_t> ns;
  } sweep_args;
  struct CellsArgs {
    std::string report;
    std::size_t top = 10;
  } cells_args;
  struct TaggerArgs {
    std::string corpus, heldout, out = "tagger.json";
    std::size_t epochs = 5;
    std::uint64_t seed = 1;
  } tagger_args;

  auto* split_cmd = app.add_subcommand("split", "split a corpus into subsets");
  split_cmd->add_option("--config", split_args.config, "experiment config file")
      ->required();
  split_cmd->add_option("--set", split_args.overrides,
                        "override config key=value");
  split_cmd->add_option("--out", split_args.out, "output split file");

  auto* train_cmd = app.add_subcommand("train", "train a one-vs-rest model");
  train_cmd->add_option("--config", train_args.config, "experiment config file")
      ->required();
  train_cmd->add_option("--split", train_args.split, "split file")->required();
  train_cmd->add_option("--subset", train_args.subset, "subset to train on");
  train_cmd->add_option("--set", train_args.overrides,
                        "override config key=value");
  train_cmd->add_option("--out", train_args.out, "output model file");
  train_cmd->add_option("--export-matrix", train_args.matrix,
                        "write the sparse training matrix (docid\tcol:val)");
  train_cmd->add_option("--export-scores", train_args.scores,
                        "write chi-squared scores (column\tkey\tchi2)");

  auto* eval_cmd = app.add_subcommand("evaluate", "evaluate a model");
  eval_cmd->add_option("--config", eval_args.config, "experiment config file")
      ->required();
  eval_cmd->add_option("--model", eval_args.model, "model file")->required();
  eval_cmd->add_option("--split", eval_args.split, "split file")->required();
  eval_cmd->add_option("--subset", eval_args.subset, "subset to evaluate on");
  eval_cmd->add_option("--cv", eval_args.cv_k,
                       "cross-validate with k folds instead of a plain pass");
  eval_cmd->add_flag("--paper-protocol", eval_args.paper_protocol,
                     "build the space and selection once on the full subset "
                     "(leaks vocabulary across folds)");
  eval_cmd->add_option("--compare", eval_args.compare,
                       "second model for a paired t-test");
  eval_cmd->add_option("--set", eval_args.overrides,
                       "override config key=value");
  eval_cmd->add_option("--out", eval_args.out, "report path prefix");
  eval_cmd->add_option("--ledger", eval_args.ledger,
                       "progress ledger TSV to append to");
  eval_cmd->add_option("--name", eval_args.name,
                       "experiment name for the ledger");

  auto* predict_cmd = app.add_subcommand("predict", "predict authors");
  predict_cmd->add_option("--model", predict_args.model, "model file")
      ->required();
  predict_cmd->add_option("--input", predict_args.input,
                          "text file or directory (default: stdin)");
  predict_cmd->add_option("--tagger", predict_args.tagger,
                          "tagger model path override");

  auto* sweep_cmd =
      app.add_subcommand("select-sweep", "accuracy for candidate top-n sizes");
  sweep_cmd->add_option("--config", sweep_args.config, "experiment config file")
      ->required();
  sweep_cmd->add_option("--split", sweep_args.split, "split file")->required();
  sweep_cmd->add_option("--train-subset", sweep_args.train_subset,
                        "subset to train on");
  sweep_cmd->add_option("--test-subset", sweep_args.test_subset,
                        "subset to test on");
  sweep_cmd->add_option("--ns", sweep_args.ns, "candidate n values");
  sweep_cmd->add_option("--set", sweep_args.overrides,
                        "override config key=value");
  sweep_cmd->add_option("--out", sweep_args.out, "output TSV path");

  auto* cells_cmd =
      app.add_subcommand("error-cells", "rank confusion matrix error cells");
  cells_cmd->add_option("--report", cells_args.report, "report JSON file")
      ->required();
  cells_cmd->add_option("--top", cells_args.top, "number of cells to print");

  auto* tagger_cmd = app.add_subcommand("train-tagger", "train the POS tagger");
  tagger_cmd->add_option("--corpus", tagger_args.corpus,
                         "tagged corpus (CoNLL TSV)")
      ->required();
  tagger_cmd->add_option("--heldout", tagger_args.heldout,
                         "held-out tagged corpus");
  tagger_cmd->add_option("--epochs", tagger_args.epochs, "training epochs");
  tagger_cmd->add_option("--seed", tagger_args.seed, "shuffle seed");
  tagger_cmd->add_option("--out", tagger_args.out, "output tagger file");

  try {
    app.parse(argc, argv);

    if (split_cmd->parsed()) {
      auto config = load_config_with_overrides(split_args.config,
                                               split_args.overrides, threads);
      return cmd_split(config, split_args.out);
    }
    if (train_cmd->parsed()) {
      auto config = load_config_with_overrides(train_args.config,
                                               train_args.overrides, threads);
      return cmd_train(config, train_args.split, train_args.subset,
                       train_args.out, train_args.matrix, train_args.scores);
    }
    if (eval_cmd->parsed()) {
      auto config = load_config_with_overrides(eval_args.config,
                                               eval_args.overrides, threads);
      return cmd_evaluate(config, eval_args.model, eval_args.split,
                          eval_args.subset, eval_args.cv_k,
                          eval_args.paper_protocol, eval_args.compare,
                          eval_args.out, eval_args.ledger, eval_args.name);
    }
    if (predict_cmd->parsed()) {
      set_max_threads(threads);
      return cmd_predict(predict_args.model, predict_args.input,
                         predict_args.tagger);
    }
    if (sweep_cmd->parsed()) {
      auto config = load_config_with_overrides(sweep_args.config,
                                               sweep_args.overrides, threads);
      return cmd_select_sweep(config, sweep_args.split, sweep_args.train_subset,
                              sweep_args.test_subset, sweep_args.ns,
                              sweep_args.out);
    }
    if (cells_cmd->parsed()) {
      return cmd_error_cells(cells_args.report, cells_args.top);
    }
    if (tagger_cmd->parsed()) {
      set_max_threads(threads);
      return cmd_train_tagger(tagger_args.corpus, tagger_args.heldout,
                              tagger_args.epochs, tagger_args.seed,
                              tagger_args.out);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "authorid: usage-error: " << e.what() << "\n";
    return 1;
  } catch (const config_error& e) {
    std::cerr << "authorid: config-error: " << e.what() << "\n";
    return 1;
  } catch (const data_error& e) {
    std::cerr << "authorid: data-error: " << e.what() << "\n";
    return 2;
  } catch (const train_error& e) {
    std::cerr << "authorid: train-error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "authorid: usage-error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "authorid: error: " << e.what() << "\n";
    return 1;
  }
}
