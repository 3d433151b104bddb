#include "authorid/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "authorid/error.hpp"
#include "authorid/parallel.hpp"
#include "authorid/rng.hpp"

namespace authorid {

namespace {

void check_inputs(std::span<const SparseVector> vectors, std::span<const int> y,
                  const TrainParams& params) {
  if (vectors.size() != y.size())
    throw std::invalid_argument("train_binary: size mismatch");
  if (vectors.empty()) throw train_error("train_binary: no examples");
  if (!(params.cost > 0.0)) throw config_error("train_binary: C must be > 0");
  if (!(params.eps > 0.0)) throw config_error("train_binary: eps must be > 0");
  if (params.bias < 0.0) throw config_error("train_binary: B must be >= 0");
  bool pos = false, neg = false;
  for (int label : y) {
    if (label == 1) pos = true;
    else if (label == -1) neg = true;
    else throw std::invalid_argument("train_binary: labels must be +1/-1");
  }
  if (!pos || !neg)
    throw train_error("train_binary: need at least one example of each sign");
  for (const auto& v : vectors)
    for (const auto& [col, val] : v.entries)
      if (!std::isfinite(val))
        throw std::invalid_argument("train_binary: non-finite feature value");
}

}  // namespace

double primal_objective(std::span<const double> w, std::size_t dim,
                        std::span<const SparseVector> vectors,
                        std::span<const int> y, const TrainParams& params) {
  const bool with_bias = params.bias > 0.0;
  double reg = 0.0;
  for (double v : w) reg += v * v;
  reg *= 0.5;

  double loss_sum = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    double decision = vectors[i].dot(w.subspan(0, dim));
    if (with_bias) decision += w[dim] * params.bias;
    double margin = 1.0 - static_cast<double>(y[i]) * decision;
    if (margin > 0.0)
      loss_sum += params.loss == Loss::hinge ? margin : margin * margin;
  }
  return reg + params.cost * loss_sum;
}

std::vector<double> train_binary(std::size_t dim,
                                 std::span<const SparseVector> vectors,
                                 std::span<const int> y,
                                 const TrainParams& params,
                                 TrainDiagnostics* diag) {
  check_inputs(vectors, y, params);

  const std::size_t n = vectors.size();
  const bool with_bias = params.bias > 0.0;
  const std::size_t wdim = dim + (with_bias ? 1 : 0);
  const double B = params.bias;
  const double C = params.cost;

  // Squared hinge is the C-weighted L2 loss: dual has no upper box but a
  // diagonal shift of 1/(2C); hinge boxes alpha at C.
  const double diag_shift =
      params.loss == Loss::squared_hinge ? 1.0 / (2.0 * C) : 0.0;
  const double upper =
      params.loss == Loss::hinge ? C : std::numeric_limits<double>::infinity();

  std::vector<double> q_ii(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sq = with_bias ? B * B : 0.0;
    for (const auto& [col, val] : vectors[i].entries) {
      if (col >= dim)
        throw std::invalid_argument("train_binary: column beyond dim");
      sq += val * val;
    }
    q_ii[i] = sq + diag_shift;
  }

  std::vector<double> w(wdim, 0.0);
  std::vector<double> alpha(n, 0.0);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  auto dual_objective = [&] {
    double wnorm = 0.0;
    for (double v : w) wnorm += v * v;
    double asum = 0.0, asq = 0.0;
    for (double a : alpha) {
      asum += a;
      asq += a * a;
    }
    return asum - 0.5 * wnorm - 0.5 * diag_shift * asq;
  };

  SplitMix64 rng(params.seed);
  bool converged = false;
  std::size_t pass = 0;
  double max_violation = 0.0;
  for (; pass < params.max_iters; ++pass) {
    shuffle(order, rng);
    max_violation = 0.0;
    for (std::size_t i : order) {
      const double yi = static_cast<double>(y[i]);
      double decision = vectors[i].dot(std::span<const double>(w).first(dim));
      if (with_bias) decision += w[dim] * B;
      const double gradient = yi * decision - 1.0 + diag_shift * alpha[i];

      double projected = gradient;
      if (alpha[i] <= 0.0)
        projected = std::min(gradient, 0.0);
      else if (alpha[i] >= upper)
        projected = std::max(gradient, 0.0);
      max_violation = std::max(max_violation, std::abs(projected));

      if (std::abs(projected) > 1e-12) {
        const double candidate = alpha[i] - gradient / q_ii[i];
        const double clipped = std::min(std::max(candidate, 0.0), upper);
        const double delta = clipped - alpha[i];
        if (delta != 0.0) {
          alpha[i] = clipped;
          for (const auto& [col, val] : vectors[i].entries)
            w[col] += delta * yi * val;
          if (with_bias) w[dim] += delta * yi * B;
        }
      }
    }
    if (diag) diag->dual_objective_per_pass.push_back(dual_objective());
    if (max_violation <= params.eps) {
      converged = true;
      ++pass;
      break;
    }
  }

  if (diag) {
    diag->final_alpha = alpha;
    diag->passes = pass;
    diag->final_max_violation = max_violation;
    diag->converged = converged;
  }
  return w;
}

std::size_t LinearModel::feature_dim() const {
  if (weights.empty()) return 0;
  return weights.front().size() - (params.bias > 0.0 ? 1 : 0);
}

LinearModel train_ovr(std::size_t dim, std::span<const SparseVector> vectors,
                      std::span<const std::size_t> labels,
                      std::vector<std::string> classes,
                      const TrainParams& params) {
  if (vectors.size() != labels.size())
    throw std::invalid_argument("train_ovr: size mismatch");
  std::vector<bool> seen(classes.size(), false);
  for (std::size_t label : labels) {
    if (label >= classes.size())
      throw std::invalid_argument("train_ovr: label out of range");
    seen[label] = true;
  }
  std::size_t present = 0;
  for (bool s : seen) present += s ? 1 : 0;
  if (present < 2)
    throw train_error("train_ovr: need at least two classes present");

  LinearModel model;
  model.classes = std::move(classes);
  model.params = params;
  model.weights.resize(model.classes.size());

  parallel_for(model.classes.size(), [&](std::size_t k) {
    if (!seen[k]) {
      // No positives for this class: score it at the lowest possible margin
      // rather than failing the whole fit.
      model.weights[k].assign(dim + (params.bias > 0.0 ? 1 : 0), 0.0);
      return;
    }
    std::vector<int> y(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
      y[i] = labels[i] == k ? 1 : -1;
    model.weights[k] = train_binary(dim, vectors, y, params);
  });
  return model;
}

Prediction predict(const LinearModel& model, const SparseVector& vec) {
  Prediction pred;
  pred.scores.resize(model.weights.size());
  const std::size_t dim = model.feature_dim();
  for (std::size_t k = 0; k < model.weights.size(); ++k) {
    const auto& w = model.weights[k];
    double s = vec.dot(std::span<const double>(w).first(dim));
    if (model.params.bias > 0.0) s += w[dim] * model.params.bias;
    pred.scores[k] = s;
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < pred.scores.size(); ++k)
    if (pred.scores[k] > pred.scores[best]) best = k;
  pred.label_index = best;
  pred.label = model.classes[best];
  return pred;
}

MajorityModel majority_baseline(std::span<const std::size_t> labels,
                                std::vector<std::string> classes) {
  if (labels.empty())
    throw train_error("majority_baseline: no labels");
  std::vector<std::size_t> counts(classes.size(), 0);
  for (std::size_t label : labels) {
    if (label >= classes.size())
      throw std::invalid_argument("majority_baseline: label out of range");
    ++counts[label];
  }
  MajorityModel model;
  model.classes = std::move(classes);
  model.modal_class = 0;
  for (std::size_t k = 1; k < counts.size(); ++k)
    if (counts[k] > counts[model.modal_class]) model.modal_class = k;
  return model;
}

Prediction predict(const MajorityModel& model, const SparseVector&) {
  Prediction pred;
  pred.scores.assign(model.classes.size(), 0.0);
  pred.scores[model.modal_class] = 1.0;
  pred.label_index = model.modal_class;
  pred.label = model.classes[model.modal_class];
  return pred;
}

}  // namespace authorid
