#ifndef AUTHORID_CORPUS_HPP_
#define AUTHORID_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace authorid {

struct Document {
  std::string id;      // path relative to the corpus root, unique
  std::string author;
  std::string text;    // raw UTF-8 contents
};

struct Corpus {
  std::vector<Document> documents;   // ordered by (author, id)
  std::vector<std::string> authors;  // distinct, sorted lexicographically

  std::size_t author_index(const std::string& name) const;
  const Document* find(const std::string& id) const;
};

// Loads a directory corpus. Both the split `<root>/{C50train,C50test}/
// <Author>/<file>` layout and the flat `<root>/<Author>/<file>` layout are
// accepted and merged. Files are read in parallel; document order is
// deterministic regardless of thread count.
Corpus load_corpus(const std::filesystem::path& root);

struct SplitRatios {
  double development = 0.2;
  double cross_validation = 0.7;
  double holdout = 0.1;
};

inline constexpr std::uint64_t kDefaultSplitSeed = 42;

struct SplitAssignment {
  std::vector<std::string> development;
  std::vector<std::string> cross_validation;
  std::vector<std::string> holdout;
  std::uint64_t seed = 0;

  const std::vector<std::string>& subset(const std::string& name) const;
};

// The three canonical subset names, in ratio order.
extern const char* const kSubsetNames[3];

// Per-author seeded shuffle followed by contiguous assignment. Counts per
// author follow largest-remainder rounding of the ratios, so a balanced
// corpus with divisible ratios splits exactly.
SplitAssignment make_split(const Corpus& corpus, SplitRatios ratios,
                           std::uint64_t seed);

struct FoldAssignment {
  std::map<std::string, std::size_t> fold_of;  // document id -> fold
  std::size_t k = 0;
};

// Stratified k-fold assignment: per-author seeded shuffle, then round-robin
// with a rolling start so fold sizes stay balanced globally too. Per author,
// fold sizes differ by at most one.
FoldAssignment make_folds(
    const std::vector<std::pair<std::string, std::string>>& docs,
    std::size_t k, std::uint64_t seed);

// Versioned JSON round-trip for split files.
std::string split_to_json(const SplitAssignment& split);
SplitAssignment split_from_json(const std::string& text);
void save_split(const SplitAssignment& split, const std::filesystem::path& path);
SplitAssignment load_split(const std::filesystem::path& path);

}  // namespace authorid

#endif  // AUTHORID_CORPUS_HPP_
