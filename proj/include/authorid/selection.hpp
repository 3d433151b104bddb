#ifndef AUTHORID_SELECTION_HPP_
#define AUTHORID_SELECTION_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "authorid/features.hpp"

namespace authorid {

struct FeatureScores {
  std::vector<double> scores;  // one per column, all >= 0
};

// Pearson chi-squared of each feature's presence/absence against the class
// variable. Features are binarized (value != 0 counts as present); cells
// with zero expected count contribute nothing. dim fixes the number of
// scored columns; 0 infers it from the widest vector.
FeatureScores chi_squared_scores(std::span<const SparseVector> vectors,
                                 std::span<const std::size_t> labels,
                                 std::size_t num_classes,
                                 std::size_t dim = 0);

// Projection of a parent space onto a kept subset of columns.
struct SelectedSpace {
  std::vector<std::size_t> kept;           // original columns, ascending
  std::vector<std::int64_t> old_to_new;    // -1 when a column was dropped

  std::size_t size() const { return kept.size(); }
  bool is_identity() const;
};

// Keeps the n highest-scoring columns, ties broken by lower original
// column index; n >= space size keeps everything. When
// exempt_stylometric is set (the default) the stylometric columns are
// always kept on top of the ranked ones, since presence/absence scores are
// meaningless for z-scored reals.
SelectedSpace select_top_n(const FeatureSpace& space,
                           const FeatureScores& scores, std::size_t n,
                           bool exempt_stylometric = true);

// Restricts a vector to the kept columns and re-indexes it.
SparseVector project(const SparseVector& vec, const SelectedSpace& sel);

}  // namespace authorid

#endif  // AUTHORID_SELECTION_HPP_
