#ifndef AUTHORID_SVM_HPP_
#define AUTHORID_SVM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "authorid/features.hpp"
#include "authorid/selection.hpp"

namespace authorid {

enum class Loss : std::uint8_t { hinge = 0, squared_hinge = 1 };

struct TrainParams {
  double cost = 1.0;          // C
  double bias = 1.0;          // B: value of the augmented constant feature,
                              // 0 disables the bias term
  double eps = 0.1;           // stop when max projected-gradient violation
                              // over a pass falls to eps
  std::size_t max_iters = 1000;  // outer passes
  Loss loss = Loss::squared_hinge;
  std::uint64_t seed = 1;
};

// Optional instrumentation filled during train_binary.
struct TrainDiagnostics {
  std::vector<double> dual_objective_per_pass;  // non-decreasing
  std::vector<double> final_alpha;
  std::size_t passes = 0;
  double final_max_violation = 0.0;
  bool converged = false;
};

// Solves the dual of the L2-regularized hinge / squared-hinge SVM by
// coordinate descent with a seeded random permutation per pass. The bias is
// handled by augmenting every example with a constant feature of value B.
// Returns the primal weight vector of length dim, plus one trailing bias
// weight when B > 0; the decision value is w.x + w_bias * B.
std::vector<double> train_binary(std::size_t dim,
                                 std::span<const SparseVector> vectors,
                                 std::span<const int> y,
                                 const TrainParams& params,
                                 TrainDiagnostics* diag = nullptr);

// Primal objective 0.5*|w|^2 + C * sum loss_i for a given weight vector
// (including its bias slot when B > 0). Exposed for tests and diagnostics.
double primal_objective(std::span<const double> w, std::size_t dim,
                        std::span<const SparseVector> vectors,
                        std::span<const int> y, const TrainParams& params);

struct Prediction {
  std::string label;
  std::vector<double> scores;  // per class, in class order
  std::size_t label_index = 0;
};

// One-vs-rest linear model. The feature space (and optional selection) the
// weights live in is carried along so the model file is self-describing.
struct LinearModel {
  std::vector<std::string> classes;
  std::vector<std::vector<double>> weights;  // [class][column (+ bias slot)]
  TrainParams params;
  FeatureSpace space;
  std::optional<SelectedSpace> selection;
  std::string tagger_ref;    // path to the tagger model, when POS kinds used
  std::string train_subset;  // subset the model was fitted on, advisory

  std::size_t feature_dim() const;  // columns excluding the bias slot
};

// Trains one binary problem per class against the rest; problems are
// independent and run in parallel. Labels are class indices into `classes`.
LinearModel train_ovr(std::size_t dim, std::span<const SparseVector> vectors,
                      std::span<const std::size_t> labels,
                      std::vector<std::string> classes,
                      const TrainParams& params);

// Argmax of per-class decision values; ties go to the lowest class index.
Prediction predict(const LinearModel& model, const SparseVector& vec);

// Always predicts the modal training class (ties to the lowest index).
struct MajorityModel {
  std::vector<std::string> classes;
  std::size_t modal_class = 0;
};

MajorityModel majority_baseline(std::span<const std::size_t> labels,
                                std::vector<std::string> classes);
Prediction predict(const MajorityModel& model, const SparseVector& vec);

}  // namespace authorid

#endif  // AUTHORID_SVM_HPP_
