#ifndef AUTHORID_TAGGER_HPP_
#define AUTHORID_TAGGER_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "authorid/textproc.hpp"

namespace authorid {

// One training sentence: (word, tag) pairs.
using TaggedSentence = std::vector<std::pair<std::string, std::string>>;

// Greedy left-to-right averaged perceptron tagger over the Penn Treebank
// tag set. Words observed with a single tag in training bypass scoring.
struct TaggerModel {
  std::vector<std::string> tags;                  // sorted tag inventory
  std::map<std::string, std::string> unambiguous; // word -> its only tag
  std::map<std::string, std::string> majority;    // word -> most frequent tag
  std::string default_tag;                        // corpus-wide majority
  // feature string -> weight per tag, aligned with `tags`.
  std::map<std::string, std::vector<double>> weights;

  std::size_t tag_index(const std::string& tag) const;
};

// Trains for `epochs` passes with seeded sentence shuffling; weights are
// averaged over all updates. epochs = 0 yields empty weights, leaving only
// the per-word dictionaries (tagging then falls back to majority tags).
TaggerModel train_tagger(const std::vector<TaggedSentence>& sentences,
                         std::size_t epochs, std::uint64_t seed);

// Tags one token sequence in place (context flows across the whole span).
void tag(const TaggerModel& model, std::span<Token> tokens);

// Tags a document sentence by sentence; tagger context resets at sentence
// boundaries to match how POS bigrams are later extracted.
void tag_document(const TaggerModel& model, AnalyzedDocument& doc);

// Held-out token accuracy.
double tagging_accuracy(const TaggerModel& model,
                        const std::vector<TaggedSentence>& sentences);

// CoNLL-style input: one `word<TAB>tag` per line, blank line between
// sentences.
std::vector<TaggedSentence> read_tagged_corpus(const std::filesystem::path& path);

// Versioned JSON round-trip.
std::string tagger_to_json(const TaggerModel& model);
TaggerModel tagger_from_json(const std::string& text);
void save_tagger(const TaggerModel& model, const std::filesystem::path& path);
TaggerModel load_tagger(const std::filesystem::path& path);

}  // namespace authorid

#endif  // AUTHORID_TAGGER_HPP_
