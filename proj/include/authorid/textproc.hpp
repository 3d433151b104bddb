#ifndef AUTHORID_TEXTPROC_HPP_
#define AUTHORID_TEXTPROC_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace authorid {

// Punctuation classes tracked by the tokenizer. Sentence-final periods and
// question marks are deliberately not tracked.
enum class Punct : std::size_t {
  comma = 0,
  semicolon,
  quotation,
  exclamation,
  colon,
  hyphen,
  double_hyphen,
};

inline constexpr std::size_t kPunctClassCount = 7;

struct PunctuationCounts {
  std::array<std::uint64_t, kPunctClassCount> counts{};

  std::uint64_t& operator[](Punct p) {
    return counts[static_cast<std::size_t>(p)];
  }
  std::uint64_t operator[](Punct p) const {
    return counts[static_cast<std::size_t>(p)];
  }
  std::uint64_t total() const;
};

const char* punct_name(Punct p);

struct Token {
  std::string surface;
  std::string norm;   // lowercased surface
  std::string stem;   // Porter stem of norm
  std::string pos;    // Penn Treebank tag; empty until tagged
  std::size_t begin = 0;  // byte offsets into the source text
  std::size_t end = 0;
};

// Half-open index range. Sentences range over token indices, paragraphs
// over sentence indices.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

struct AnalyzedDocument {
  std::vector<Token> tokens;
  std::vector<Span> sentences;
  std::vector<Span> paragraphs;
  PunctuationCounts punctuation;

  bool has_pos_tags() const;
};

// Word tokens are maximal runs of letters and digits with word-internal
// apostrophes kept ("don't" is one token). Punctuation never enters a
// token; the tracked classes are tallied instead. A run of two or more
// hyphens tallies once as double_hyphen. ASCII and curly quote characters
// tally as quotation; apostrophes inside words do not. Text must be valid
// UTF-8; bytes above ASCII that are not quote characters are treated as
// word characters.
std::pair<std::vector<Token>, PunctuationCounts> tokenize(std::string_view text);

// Sentence boundaries fall after '.', '!' or '?' when followed by
// whitespace and then a capital letter, or by end of text; blank lines
// also close the current sentence. Paragraphs break at blank lines. Every
// token lands in exactly one sentence and every sentence in exactly one
// paragraph; text without terminal punctuation yields a single sentence.
std::pair<std::vector<Span>, std::vector<Span>> segment(
    std::string_view text, const std::vector<Token>& tokens);

// tokenize + segment in one call.
AnalyzedDocument analyze(std::string_view text);

bool is_valid_utf8(std::string_view bytes);

}  // namespace authorid

#endif  // AUTHORID_TEXTPROC_HPP_
