#ifndef AUTHORID_FEATURES_HPP_
#define AUTHORID_FEATURES_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "authorid/textproc.hpp"

namespace authorid {

enum class FeatureKind : std::uint8_t {
  unigram = 0,
  bigram,
  pos_bigram,
  word_pos,
  stylometric,
};

const char* feature_kind_name(FeatureKind kind);

// Typed feature identity. `a`/`b` hold the kind's components: the word for
// unigrams, the two words of a bigram, the two tags of a POS bigram, the
// (word, tag) of a word/POS pair, or the stylometric feature name in `a`.
struct FeatureKey {
  FeatureKind kind = FeatureKind::unigram;
  std::string a;
  std::string b;

  auto operator<=>(const FeatureKey&) const = default;

  static FeatureKey unigram(std::string word);
  static FeatureKey bigram(std::string w1, std::string w2);
  static FeatureKey pos_bigram(std::string t1, std::string t2);
  static FeatureKey word_pos(std::string word, std::string tag);
  static FeatureKey stylometric(std::string name);

  std::string to_string() const;
};

// The 23 stylometric measurements: 6 phraseology, 7 punctuation rates and
// 10 lexical usage rates (rates are per 1000 word tokens).
struct StylometricProfile {
  double lexical_diversity = 0;      // tokens / distinct stems; 0 when empty
  double mean_word_length = 0;
  double mean_sentence_length = 0;   // in tokens
  double stdev_sentence_length = 0;  // sample stdev, 0 when <= 1 sentence
  double mean_paragraph_length = 0;  // in tokens
  double document_length = 0;        // token count

  double commas = 0, semicolons = 0, quotations = 0, exclamations = 0,
         colons = 0, hyphens = 0, double_hyphens = 0;

  double and_rate = 0, but_rate = 0, however_rate = 0, if_rate = 0,
         that_rate = 0, more_rate = 0, must_rate = 0, might_rate = 0,
         this_rate = 0, very_rate = 0;

  // Canonical feature names, and the value behind each name.
  static const std::vector<std::string>& names();
  double value(const std::string& name) const;
};

StylometricProfile stylometrics(const AnalyzedDocument& doc);

struct FeatureConfig {
  bool unigrams = true;
  bool bigrams = false;
  bool pos_bigrams = false;
  bool word_pos = false;
  bool stylometrics = false;
  std::size_t min_df = 1;        // keep text features seen in >= min_df docs
  bool binary_features = false;  // presence instead of term frequency
  bool standardize = true;       // z-score stylometric columns

  bool wants_pos() const { return pos_bigrams || word_pos; }
  bool wants_text(FeatureKind kind) const;
};

// Counts of text features in one document. Bigrams and POS bigrams never
// cross sentence boundaries. Throws when a POS-dependent kind is requested
// but the document carries no tags.
std::map<FeatureKey, std::uint32_t> text_feature_counts(
    const AnalyzedDocument& doc, const FeatureConfig& config);

struct SparseVector {
  // (column, value) pairs with strictly increasing columns, no zeros.
  std::vector<std::pair<std::uint32_t, double>> entries;

  double dot(std::span<const double> dense) const;
  bool operator==(const SparseVector&) const = default;
};

struct NormStat {
  double mean = 0;
  double stdev = 0;  // population stdev over training documents
};

class FeatureSpace {
 public:
  FeatureSpace() = default;
  FeatureSpace(std::vector<FeatureKey> keys, FeatureConfig config,
               std::vector<NormStat> norm_stats);

  std::size_t size() const { return keys_.size(); }
  const std::vector<FeatureKey>& keys() const { return keys_; }
  const FeatureConfig& config() const { return config_; }

  // Column of a key, or nullopt when out of space.
  std::optional<std::size_t> index_of(const FeatureKey& key) const;

  // Stylometric columns occupy the tail of the space (kind order puts them
  // last). first_stylometric_column() == size() when disabled.
  std::size_t first_stylometric_column() const;
  const std::vector<NormStat>& norm_stats() const { return norm_stats_; }

  bool operator==(const FeatureSpace& other) const;

 private:
  std::vector<FeatureKey> keys_;           // sorted by (kind, a, b)
  std::map<FeatureKey, std::size_t> index_;
  FeatureConfig config_;
  std::vector<NormStat> norm_stats_;       // aligned with stylometric columns
};

// Builds the space from training documents only: text features with
// document frequency >= min_df for the requested kinds, plus the 23
// stylometric keys when enabled. Key order is (kind, lexicographic), so the
// result is invariant to document order.
FeatureSpace build_space(std::span<const AnalyzedDocument> train_docs,
                         const FeatureConfig& config);

// Maps a document into the space: term counts (or presence) for text
// features, z-scored stylometric values when standardization is on.
// Features outside the space are ignored.
SparseVector vectorize(const AnalyzedDocument& doc, const FeatureSpace& space);

}  // namespace authorid

#endif  // AUTHORID_FEATURES_HPP_
