#include "authorid/selection.hpp"

#include <algorithm>
#include <stdexcept>

namespace authorid {

FeatureScores chi_squared_scores(std::span<const SparseVector> vectors,
                                 std::span<const std::size_t> labels,
                                 std::size_t num_classes, std::size_t dim) {
  if (vectors.size() != labels.size())
    throw std::invalid_argument("chi_squared_scores: size mismatch");
  if (vectors.empty())
    throw std::invalid_argument("chi_squared_scores: empty input");

  if (dim == 0) {
    for (const auto& v : vectors)
      if (!v.entries.empty())
        dim = std::max(dim,
                       static_cast<std::size_t>(v.entries.back().first) + 1);
  }

  std::vector<double> class_totals(num_classes, 0.0);
  // present[c * dim + f] = number of class-c documents where feature f != 0
  std::vector<double> present(num_classes * dim, 0.0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::size_t label = labels[i];
    if (label >= num_classes)
      throw std::invalid_argument("chi_squared_scores: label out of range");
    class_totals[label] += 1.0;
    for (const auto& [col, val] : vectors[i].entries)
      if (val != 0.0) present[label * dim + col] += 1.0;
  }

  const double total = static_cast<double>(vectors.size());
  FeatureScores result;
  result.scores.assign(dim, 0.0);
  for (std::size_t f = 0; f < dim; ++f) {
    double total_present = 0.0;
    for (std::size_t c = 0; c < num_classes; ++c)
      total_present += present[c * dim + f];
    const double total_absent = total - total_present;
    double chi2 = 0.0;
    for (std::size_t c = 0; c < num_classes; ++c) {
      const double n_c = class_totals[c];
      const double observed_present = present[c * dim + f];
      const double observed_absent = n_c - observed_present;
      const double expected_present = n_c * total_present / total;
      const double expected_absent = n_c * total_absent / total;
      if (expected_present > 0.0) {
        const double d = observed_present - expected_present;
        chi2 += d * d / expected_present;
      }
      if (expected_absent > 0.0) {
        const double d = observed_absent - expected_absent;
        chi2 += d * d / expected_absent;
      }
    }
    result.scores[f] = chi2;
  }
  return result;
}

bool SelectedSpace::is_identity() const {
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (kept[i] != i) return false;
  return kept.size() == old_to_new.size();
}

SelectedSpace select_top_n(const FeatureSpace& space,
                           const FeatureScores& scores, std::size_t n,
                           bool exempt_stylometric) {
  if (n < 1) throw std::invalid_argument("select_top_n: n must be >= 1");

  const std::size_t dim = space.size();
  const std::size_t first_stylo =
      exempt_stylometric ? space.first_stylometric_column() : dim;
  const std::size_t num_exempt = dim - first_stylo;

  std::vector<char> keep(dim, 0);
  for (std::size_t c = first_stylo; c < dim; ++c) keep[c] = 1;

  // Rank the non-exempt columns by score, ties by lower column index.
  std::vector<std::size_t> ranked;
  ranked.reserve(first_stylo);
  for (std::size_t c = 0; c < first_stylo; ++c) ranked.push_back(c);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t a, std::size_t b) {
                     double sa = a < scores.scores.size() ? scores.scores[a] : 0.0;
                     double sb = b < scores.scores.size() ? scores.scores[b] : 0.0;
                     if (sa != sb) return sa > sb;
                     return a < b;
                   });

  const std::size_t budget = n > num_exempt ? n - num_exempt : 0;
  const std::size_t take = std::min(budget, ranked.size());
  for (std::size_t i = 0; i < take; ++i) keep[ranked[i]] = 1;

  SelectedSpace sel;
  sel.old_to_new.assign(dim, -1);
  for (std::size_t c = 0; c < dim; ++c) {
    if (keep[c]) {
      sel.old_to_new[c] = static_cast<std::int64_t>(sel.kept.size());
      sel.kept.push_back(c);
    }
  }
  return sel;
}

SparseVector project(const SparseVector& vec, const SelectedSpace& sel) {
  SparseVector out;
  for (const auto& [col, val] : vec.entries) {
    if (col < sel.old_to_new.size() && sel.old_to_new[col] >= 0)
      out.entries.emplace_back(
          static_cast<std::uint32_t>(sel.old_to_new[col]), val);
  }
  return out;
}

}  // namespace authorid
