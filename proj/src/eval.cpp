#include "authorid/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "authorid/error.hpp"

namespace authorid {

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (const auto& row : counts)
    for (auto c : row) t += c;
  return t;
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
  return t;
}

ConfusionMatrix confusion(std::span<const std::size_t> gold,
                          std::span<const std::size_t> predicted,
                          std::vector<std::string> classes) {
  if (gold.size() != predicted.size())
    throw std::invalid_argument("confusion: size mismatch");
  ConfusionMatrix m;
  m.classes = std::move(classes);
  m.counts.assign(m.classes.size(),
                  std::vector<std::uint64_t>(m.classes.size(), 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] >= m.classes.size() || predicted[i] >= m.classes.size())
      throw std::invalid_argument("confusion: label not in classes");
    ++m.counts[gold[i]][predicted[i]];
  }
  return m;
}

double accuracy(const ConfusionMatrix& matrix) {
  const std::uint64_t total = matrix.total();
  if (total == 0) return 0.0;
  return static_cast<double>(matrix.trace()) / static_cast<double>(total);
}

double kappa(const ConfusionMatrix& matrix) {
  const std::uint64_t total = matrix.total();
  if (total == 0) throw std::invalid_argument("kappa: empty matrix");
  const double n = static_cast<double>(total);
  const double p_o = static_cast<double>(matrix.trace()) / n;

  double p_e = 0.0;
  for (std::size_t k = 0; k < matrix.counts.size(); ++k) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < matrix.counts.size(); ++j) {
      row += static_cast<double>(matrix.counts[k][j]);
      col += static_cast<double>(matrix.counts[j][k]);
    }
    p_e += row * col;
  }
  p_e /= n * n;

  if (p_e >= 1.0) return p_o >= 1.0 ? 1.0 : 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

std::vector<ErrorCell> error_cells(const ConfusionMatrix& matrix,
                                   std::size_t top) {
  std::vector<ErrorCell> cells;
  for (std::size_t g = 0; g < matrix.counts.size(); ++g) {
    for (std::size_t p = 0; p < matrix.counts.size(); ++p) {
      if (g == p || matrix.counts[g][p] == 0) continue;
      cells.push_back({g, p, matrix.counts[g][p]});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const ErrorCell& a, const ErrorCell& b) {
    if (a.count != b.count) return a.count > b.count;
    return std::tie(a.gold, a.predicted) < std::tie(b.gold, b.predicted);
  });
  if (cells.size() > top) cells.resize(top);
  return cells;
}

// Continued fraction for the regularized incomplete beta function
// (modified Lentz); converges quickly for x < (a+1)/(a+b+2).
namespace {

double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 500;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, std::size_t df) {
  if (df == 0) throw std::invalid_argument("student_t_two_sided_p: df = 0");
  if (std::isinf(t)) return 0.0;
  const double nu = static_cast<double>(df);
  const double x = nu / (nu + t * t);
  return regularized_incomplete_beta(nu / 2.0, 0.5, x);
}

TTestResult paired_t_test(std::span<const double> a,
                          std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("paired_t_test: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("paired_t_test: need n >= 2");

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);

  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (a[i] - b[i]) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  TTestResult result;
  result.df = n - 1;
  result.mean_diff = mean;
  if (sd == 0.0) {
    if (mean == 0.0) {
      result.t = 0.0;
      result.p = 1.0;
    } else {
      result.t = mean > 0.0 ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
      result.p = 0.0;
    }
    return result;
  }
  result.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  result.p = student_t_two_sided_p(result.t, result.df);
  return result;
}

Prediction FittedPipeline::run(const AnalyzedDocument& doc) const {
  SparseVector vec = vectorize(doc, space);
  if (selection) vec = project(vec, *selection);
  if (svm) return predict(*svm, vec);
  return predict(*majority, vec);
}

FittedPipeline fit_pipeline(std::span<const AnalyzedDocument> train_docs,
                            std::span<const std::size_t> train_labels,
                            const std::vector<std::string>& classes,
                            const PipelineConfig& config) {
  FittedPipeline fitted;
  fitted.space = build_space(train_docs, config.features);

  std::vector<SparseVector> vectors(train_docs.size());
  for (std::size_t i = 0; i < train_docs.size(); ++i)
    vectors[i] = vectorize(train_docs[i], fitted.space);

  std::size_t dim = fitted.space.size();
  if (config.selection_n && *config.selection_n < dim) {
    FeatureScores scores =
        chi_squared_scores(vectors, train_labels, classes.size(), dim);
    fitted.selection = select_top_n(fitted.space, scores, *config.selection_n,
                                    config.chi2_exempt_stylometric);
    for (auto& v : vectors) v = project(v, *fitted.selection);
    dim = fitted.selection->size();
  }

  if (config.learner == Learner::majority) {
    fitted.majority = majority_baseline(train_labels, classes);
  } else {
    fitted.svm = train_ovr(dim, vectors, train_labels, classes, config.train);
  }
  return fitted;
}

EvalReport cross_validate(std::span<const AnalyzedDocument> docs,
                          std::span<const std::string> ids,
                          std::span<const std::size_t> labels,
                          const std::vector<std::string>& classes,
                          const FoldAssignment& folds,
                          const PipelineConfig& config) {
  if (docs.size() != ids.size() || docs.size() != labels.size())
    throw std::invalid_argument("cross_validate: size mismatch");
  if (folds.k < 2) throw config_error("cross_validate: need k >= 2");

  std::vector<std::size_t> fold_of(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto it = folds.fold_of.find(ids[i]);
    if (it == folds.fold_of.end())
      throw config_error("cross_validate: document missing from folds: " +
                         ids[i]);
    fold_of[i] = it->second;
  }

  // Paper protocol: space and selection come from the full document set;
  // only the classifier weights are refit per fold.
  std::optional<FeatureSpace> shared_space;
  std::optional<SelectedSpace> shared_selection;
  std::vector<SparseVector> shared_vectors;
  if (config.paper_protocol) {
    shared_space = build_space(docs, config.features);
    shared_vectors.resize(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i)
      shared_vectors[i] = vectorize(docs[i], *shared_space);
    if (config.selection_n && *config.selection_n < shared_space->size()) {
      FeatureScores scores = chi_squared_scores(
          shared_vectors, labels, classes.size(), shared_space->size());
      shared_selection =
          select_top_n(*shared_space, scores, *config.selection_n,
                       config.chi2_exempt_stylometric);
      for (auto& v : shared_vectors) v = project(v, *shared_selection);
    }
  }

  std::vector<std::size_t> pooled_gold, pooled_pred;
  pooled_gold.reserve(docs.size());
  pooled_pred.reserve(docs.size());
  EvalReport report;

  for (std::size_t fold = 0; fold < folds.k; ++fold) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < docs.size(); ++i)
      (fold_of[i] == fold ? test_idx : train_idx).push_back(i);
    if (test_idx.empty()) continue;
    if (train_idx.empty())
      throw train_error("cross_validate: fold " + std::to_string(fold) +
                        " leaves no training documents");

    std::size_t correct = 0;
    try {
      std::vector<std::size_t> train_labels;
      train_labels.reserve(train_idx.size());
      for (std::size_t i : train_idx) train_labels.push_back(labels[i]);

      if (config.paper_protocol) {
        std::vector<SparseVector> train_vecs;
        train_vecs.reserve(train_idx.size());
        for (std::size_t i : train_idx) train_vecs.push_back(shared_vectors[i]);
        const std::size_t dim = shared_selection ? shared_selection->size()
                                                 : shared_space->size();
        std::optional<LinearModel> svm_model;
        std::optional<MajorityModel> majority_model;
        if (config.learner == Learner::majority)
          majority_model = majority_baseline(train_labels, classes);
        else
          svm_model =
              train_ovr(dim, train_vecs, train_labels, classes, config.train);
        for (std::size_t i : test_idx) {
          Prediction pred = svm_model ? predict(*svm_model, shared_vectors[i])
                                      : predict(*majority_model, shared_vectors[i]);
          pooled_gold.push_back(labels[i]);
          pooled_pred.push_back(pred.label_index);
          if (pred.label_index == labels[i]) ++correct;
        }
      } else {
        std::vector<AnalyzedDocument> train_docs;
        train_docs.reserve(train_idx.size());
        for (std::size_t i : train_idx) train_docs.push_back(docs[i]);
        FittedPipeline fitted =
            fit_pipeline(train_docs, train_labels, classes, config);
        for (std::size_t i : test_idx) {
          Prediction pred = fitted.run(docs[i]);
          pooled_gold.push_back(labels[i]);
          pooled_pred.push_back(pred.label_index);
          if (pred.label_index == labels[i]) ++correct;
        }
      }
    } catch (const std::exception& e) {
      throw train_error("cross_validate: fold " + std::to_string(fold) + ": " +
                        e.what());
    }
    report.per_fold_accuracy.push_back(static_cast<double>(correct) /
                                       static_cast<double>(test_idx.size()));
  }

  report.matrix = confusion(pooled_gold, pooled_pred, classes);
  report.accuracy = accuracy(report.matrix);
  report.kappa = kappa(report.matrix);
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["version"] = 1;
  j["accuracy"] = report.accuracy;
  j["kappa"] = report.kappa;
  j["classes"] = report.matrix.classes;
  j["matrix"] = report.matrix.counts;
  if (!report.per_fold_accuracy.empty())
    j["per_fold_accuracy"] = report.per_fold_accuracy;
  return j.dump();
}

EvalReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("version", 0) != 1)
    throw data_error("unrecognized report file");
  EvalReport report;
  report.accuracy = j.at("accuracy").get<double>();
  report.kappa = j.at("kappa").get<double>();
  report.matrix.classes = j.at("classes").get<std::vector<std::string>>();
  report.matrix.counts =
      j.at("matrix").get<std::vector<std::vector<std::uint64_t>>>();
  if (j.contains("per_fold_accuracy"))
    report.per_fold_accuracy =
        j.at("per_fold_accuracy").get<std::vector<double>>();
  return report;
}

std::string report_to_text(const EvalReport& report) {
  std::ostringstream out;
  out << "documents: " << report.matrix.total() << '\n';
  out << "accuracy:  " << report.accuracy << '\n';
  out << "kappa:     " << report.kappa << '\n';
  if (!report.per_fold_accuracy.empty()) {
    out << "per-fold accuracy:";
    for (double a : report.per_fold_accuracy) out << ' ' << a;
    out << '\n';
  }
  auto top = error_cells(report.matrix, 10);
  if (!top.empty()) {
    out << "top error cells (gold -> predicted: count):\n";
    for (const auto& cell : top)
      out << "  " << report.matrix.classes[cell.gold] << " -> "
          << report.matrix.classes[cell.predicted] << ": " << cell.count
          << '\n';
  }
  return out.str();
}

std::string matrix_to_csv(const ConfusionMatrix& matrix) {
  std::ostringstream out;
  out << "gold\\predicted";
  for (const auto& c : matrix.classes) out << ',' << c;
  out << '\n';
  for (std::size_t g = 0; g < matrix.counts.size(); ++g) {
    out << matrix.classes[g];
    for (std::size_t p = 0; p < matrix.counts.size(); ++p)
      out << ',' << matrix.counts[g][p];
    out << '\n';
  }
  return out.str();
}

}  // namespace authorid
