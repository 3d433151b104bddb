#include "authorid/textproc.hpp"

#include <algorithm>
#include <cctype>

#include "authorid/stemmer.hpp"

namespace authorid {

namespace {

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) != 0;
}

bool is_space_byte(unsigned char c) {
  return std::isspace(c) != 0;
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// UTF-8 sequences for the curly quote characters.
constexpr std::string_view kLeftSingle = "\xe2\x80\x98";   // U+2018
constexpr std::string_view kRightSingle = "\xe2\x80\x99";  // U+2019
constexpr std::string_view kLeftDouble = "\xe2\x80\x9c";   // U+201C
constexpr std::string_view kRightDouble = "\xe2\x80\x9d";  // U+201D

bool match_at(std::string_view text, std::size_t i, std::string_view what) {
  return text.substr(i, what.size()) == what;
}

std::size_t utf8_sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xe0) == 0xc0) return 2;
  if ((lead & 0xf0) == 0xe0) return 3;
  if ((lead & 0xf8) == 0xf0) return 4;
  return 1;  // invalid lead; callers validate separately
}

}  // namespace

std::uint64_t PunctuationCounts::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

const char* punct_name(Punct p) {
  switch (p) {
    case Punct::comma: return "commas";
    case Punct::semicolon: return "semicolons";
    case Punct::quotation: return "quotations";
    case Punct::exclamation: return "exclamations";
    case Punct::colon: return "colons";
    case Punct::hyphen: return "hyphens";
    case Punct::double_hyphen: return "double_hyphens";
  }
  return "";
}

bool AnalyzedDocument::has_pos_tags() const {
  return std::all_of(tokens.begin(), tokens.end(),
                     [](const Token& t) { return !t.pos.empty(); }) &&
         !tokens.empty();
}

bool is_valid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(bytes[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len;
    std::uint32_t cp;
    if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char cont = static_cast<unsigned char>(bytes[i + k]);
      if ((cont & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cont & 0x3f);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    if (len == 2 && cp < 0x80) return false;
    if (len == 3 && cp < 0x800) return false;
    if (len == 4 && cp < 0x10000) return false;
    if (cp >= 0xd800 && cp <= 0xdfff) return false;
    if (cp > 0x10ffff) return false;
    i += len;
  }
  return true;
}

std::pair<std::vector<Token>, PunctuationCounts> tokenize(
    std::string_view text) {
  std::vector<Token> tokens;
  PunctuationCounts punct;

  const std::size_t n = text.size();
  std::size_t i = 0;
  std::size_t token_start = std::string_view::npos;

  auto close_token = [&](std::size_t end) {
    if (token_start == std::string_view::npos) return;
    Token t;
    t.surface = std::string(text.substr(token_start, end - token_start));
    t.norm.reserve(t.surface.size());
    for (char c : t.surface) t.norm.push_back(ascii_lower(c));
    t.stem = porter_stem(t.norm);
    t.begin = token_start;
    t.end = end;
    tokens.push_back(std::move(t));
    token_start = std::string_view::npos;
  };

  // An apostrophe is part of a token only between two word characters.
  auto apostrophe_is_internal = [&](std::size_t apos_end) {
    return token_start != std::string_view::npos && apos_end < n &&
           is_word_byte(static_cast<unsigned char>(text[apos_end]));
  };

  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_word_byte(c)) {
      if (token_start == std::string_view::npos) token_start = i;
      ++i;
      continue;
    }
    switch (c) {
      case '\'':
        if (apostrophe_is_internal(i + 1)) {
          ++i;
        } else {
          close_token(i);
          ++punct[Punct::quotation];
          ++i;
        }
        continue;
      case '"':
        close_token(i);
        ++punct[Punct::quotation];
        ++i;
        continue;
      case ',':
        close_token(i);
        ++punct[Punct::comma];
        ++i;
        continue;
      case ';':
        close_token(i);
        ++punct[Punct::semicolon];
        ++i;
        continue;
      case '!':
        close_token(i);
        ++punct[Punct::exclamation];
        ++i;
        continue;
      case ':':
        close_token(i);
        ++punct[Punct::colon];
        ++i;
        continue;
      case '-': {
        close_token(i);
        std::size_t run = 1;
        while (i + run < n && text[i + run] == '-') ++run;
        ++punct[run >= 2 ? Punct::double_hyphen : Punct::hyphen];
        i += run;
        continue;
      }
      default:
        break;
    }
    if (c >= 0x80) {
      if (match_at(text, i, kRightSingle)) {
        // Curly apostrophe follows the same internal-apostrophe rule.
        if (apostrophe_is_internal(i + kRightSingle.size())) {
          i += kRightSingle.size();
        } else {
          close_token(i);
          ++punct[Punct::quotation];
          i += kRightSingle.size();
        }
        continue;
      }
      if (match_at(text, i, kLeftSingle) || match_at(text, i, kLeftDouble) ||
          match_at(text, i, kRightDouble)) {
        close_token(i);
        ++punct[Punct::quotation];
        i += 3;
        continue;
      }
      // Any other non-ASCII code point counts as a word character.
      if (token_start == std::string_view::npos) token_start = i;
      i += utf8_sequence_length(c);
      continue;
    }
    // Whitespace and untracked punctuation.
    close_token(i);
    ++i;
  }
  close_token(n);
  return {std::move(tokens), punct};
}

namespace {

// Byte offsets at which the current sentence / paragraph ends.
struct Cuts {
  std::vector<std::size_t> sentence;
  std::vector<std::size_t> paragraph;
};

Cuts find_cuts(std::string_view text) {
  Cuts cuts;
  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    char c = text[i];
    if (c == '.' || c == '!' || c == '?') {
      std::size_t j = i + 1;
      bool saw_space = false;
      while (j < n && is_space_byte(static_cast<unsigned char>(text[j]))) {
        saw_space = true;
        ++j;
      }
      if (j >= n || (saw_space && text[j] >= 'A' && text[j] <= 'Z'))
        cuts.sentence.push_back(i + 1);
    } else if (c == '\n') {
      std::size_t j = i + 1;
      while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r'))
        ++j;
      if (j < n && text[j] == '\n') {
        cuts.paragraph.push_back(i);
        cuts.sentence.push_back(i);  // a blank line always closes a sentence
      }
    }
  }
  std::sort(cuts.sentence.begin(), cuts.sentence.end());
  cuts.sentence.erase(std::unique(cuts.sentence.begin(), cuts.sentence.end()),
                      cuts.sentence.end());
  return cuts;
}

}  // namespace

std::pair<std::vector<Span>, std::vector<Span>> segment(
    std::string_view text, const std::vector<Token>& tokens) {
  Cuts cuts = find_cuts(text);

  std::vector<Span> sentences;
  std::size_t cut_idx = 0;
  std::size_t sent_begin = 0;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    while (cut_idx < cuts.sentence.size() &&
           tokens[t].begin >= cuts.sentence[cut_idx]) {
      if (t > sent_begin) sentences.push_back({sent_begin, t});
      sent_begin = t;
      ++cut_idx;
    }
  }
  if (!tokens.empty() && tokens.size() > sent_begin)
    sentences.push_back({sent_begin, tokens.size()});

  // Group sentences into paragraphs by the paragraph cut preceding each
  // sentence's first token.
  std::vector<Span> paragraphs;
  std::size_t para_begin = 0;
  std::size_t para_cut_idx = 0;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    std::size_t first_offset = tokens[sentences[s].begin].begin;
    std::size_t bucket = para_cut_idx;
    while (bucket < cuts.paragraph.size() &&
           first_offset >= cuts.paragraph[bucket])
      ++bucket;
    if (bucket != para_cut_idx && s > para_begin) {
      paragraphs.push_back({para_begin, s});
      para_begin = s;
    }
    para_cut_idx = bucket;
  }
  if (!sentences.empty())
    paragraphs.push_back({para_begin, sentences.size()});

  return {std::move(sentences), std::move(paragraphs)};
}

AnalyzedDocument analyze(std::string_view text) {
  AnalyzedDocument doc;
  auto [tokens, punct] = tokenize(text);
  doc.tokens = std::move(tokens);
  doc.punctuation = punct;
  auto [sentences, paragraphs] = segment(text, doc.tokens);
  doc.sentences = std::move(sentences);
  doc.paragraphs = std::move(paragraphs);
  return doc;
}

}  // namespace authorid
