#ifndef AUTHORID_EVAL_HPP_
#define AUTHORID_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "authorid/corpus.hpp"
#include "authorid/features.hpp"
#include "authorid/selection.hpp"
#include "authorid/svm.hpp"
#include "authorid/tagger.hpp"

namespace authorid {

struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<std::uint64_t>> counts;  // [gold][predicted]

  std::uint64_t total() const;
  std::uint64_t trace() const;
};

ConfusionMatrix confusion(std::span<const std::size_t> gold,
                          std::span<const std::size_t> predicted,
                          std::vector<std::string> classes);

double accuracy(const ConfusionMatrix& matrix);

// Cohen's kappa, (p_o - p_e) / (1 - p_e). When p_e reaches 1 the statistic
// is defined as 1 for a perfect matrix and 0 otherwise.
double kappa(const ConfusionMatrix& matrix);

struct ErrorCell {
  std::size_t gold = 0;
  std::size_t predicted = 0;
  std::uint64_t count = 0;
};

// Off-diagonal cells sorted by count descending, ties by (gold, predicted).
std::vector<ErrorCell> error_cells(const ConfusionMatrix& matrix,
                                   std::size_t top);

struct TTestResult {
  double t = 0;
  double p = 1;
  std::size_t df = 0;
  double mean_diff = 0;
};

// Paired two-sided Student t-test on per-fold metrics. Zero-variance
// differences give t = +/-infinity with p = 0, or t = 0 and p = 1 when the
// differences are all zero.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

// Two-sided tail probability of Student's t with df degrees of freedom,
// via the regularized incomplete beta function.
double student_t_two_sided_p(double t, std::size_t df);
double regularized_incomplete_beta(double a, double b, double x);

struct EvalReport {
  double accuracy = 0;
  double kappa = 0;
  ConfusionMatrix matrix;
  std::vector<double> per_fold_accuracy;
};

enum class Learner : std::uint8_t { linear_svm = 0, majority = 1 };

struct PipelineConfig {
  FeatureConfig features;
  std::optional<std::size_t> selection_n;
  bool chi2_exempt_stylometric = true;
  TrainParams train;
  Learner learner = Learner::linear_svm;
  // When set, the feature space, chi-squared scores and selection are built
  // once on the full document set before folding, which leaks test
  // vocabulary into training. Off by default. Documents must arrive already
  // analyzed (and tagged when POS kinds are enabled); analysis is
  // fold-independent.
  bool paper_protocol = false;
};

// Runs stratified k-fold cross-validation over pre-analyzed documents.
// Unless paper_protocol is set, the vocabulary, normalization statistics,
// chi-squared scores and selection are all rebuilt from the training folds
// only. Predictions are pooled into one confusion matrix.
EvalReport cross_validate(std::span<const AnalyzedDocument> docs,
                          std::span<const std::string> ids,
                          std::span<const std::size_t> labels,
                          const std::vector<std::string>& classes,
                          const FoldAssignment& folds,
                          const PipelineConfig& config);

// Fits the pipeline on (train_docs, train_labels) and returns predictions
// for eval_docs. Used by cross_validate and by the train/evaluate commands.
struct FittedPipeline {
  FeatureSpace space;
  std::optional<SelectedSpace> selection;
  std::optional<LinearModel> svm;
  std::optional<MajorityModel> majority;

  Prediction run(const AnalyzedDocument& doc) const;
};

FittedPipeline fit_pipeline(std::span<const AnalyzedDocument> train_docs,
                            std::span<const std::size_t> train_labels,
                            const std::vector<std::string>& classes,
                            const PipelineConfig& config);

// JSON + human-readable renderings of a report; CSV for the matrix.
std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);
std::string report_to_text(const EvalReport& report);
std::string matrix_to_csv(const ConfusionMatrix& matrix);

}  // namespace authorid

#endif  // AUTHORID_EVAL_HPP_
