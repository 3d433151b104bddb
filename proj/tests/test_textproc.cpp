#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "authorid/rng.hpp"
#include "authorid/textproc.hpp"

using namespace authorid;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

}  // namespace

TEST_CASE("basic tokenization drops punctuation") {
  auto [tokens, punct] = tokenize("It is official.");
  CHECK(surfaces(tokens) == std::vector<std::string>{"It", "is", "official"});
  CHECK(punct.total() == 0);  // the period is untracked
  CHECK(tokens[0].norm == "it");
  CHECK(tokens[2].stem == "offici");
}

TEST_CASE("hyphen runs and exclamations") {
  auto [tokens, punct] = tokenize("well-known -- yes!");
  CHECK(surfaces(tokens) == std::vector<std::string>{"well", "known", "yes"});
  CHECK(punct[Punct::hyphen] == 1);
  CHECK(punct[Punct::double_hyphen] == 1);
  CHECK(punct[Punct::exclamation] == 1);
  CHECK(punct[Punct::comma] == 0);
}

TEST_CASE("empty text") {
  auto [tokens, punct] = tokenize("");
  CHECK(tokens.empty());
  CHECK(punct.total() == 0);
  AnalyzedDocument doc = analyze("");
  CHECK(doc.sentences.empty());
  CHECK(doc.paragraphs.empty());
}

TEST_CASE("internal apostrophes stay in the token") {
  auto [tokens, punct] = tokenize("don't can't o'clock");
  CHECK(surfaces(tokens) ==
        std::vector<std::string>{"don't", "can't", "o'clock"});
  CHECK(punct[Punct::quotation] == 0);
}

TEST_CASE("leading and trailing apostrophes are quotations") {
  auto [tokens, punct] = tokenize("'tis said 'hello there' twice");
  CHECK(surfaces(tokens) ==
        std::vector<std::string>{"tis", "said", "hello", "there", "twice"});
  CHECK(punct[Punct::quotation] == 3);
}

TEST_CASE("quotation characters, ascii and curly") {
  auto [tokens, punct] =
      tokenize("\"quoted\" and “curly” and ‘single’");
  CHECK(punct[Punct::quotation] == 6);
  CHECK(surfaces(tokens) == std::vector<std::string>{"quoted", "and", "curly",
                                                     "and", "single"});
}

TEST_CASE("curly apostrophe inside a word") {
  auto [tokens, punct] = tokenize("don’t stop");
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0].norm == "don’t");
  CHECK(punct[Punct::quotation] == 0);
}

TEST_CASE("tracked punctuation classes") {
  auto [tokens, punct] = tokenize("a, b; c: d! e-f");
  CHECK(punct[Punct::comma] == 1);
  CHECK(punct[Punct::semicolon] == 1);
  CHECK(punct[Punct::colon] == 1);
  CHECK(punct[Punct::exclamation] == 1);
  CHECK(punct[Punct::hyphen] == 1);
  CHECK(tokens.size() == 6);
}

TEST_CASE("digits and mixed runs") {
  auto [tokens, punct] = tokenize("in 1996 the B52 flew 5,000 miles");
  CHECK(surfaces(tokens) == std::vector<std::string>{"in", "1996", "the",
                                                     "B52", "flew", "5",
                                                     "000", "miles"});
  CHECK(punct[Punct::comma] == 1);
}

TEST_CASE("two sentences one paragraph") {
  AnalyzedDocument doc = analyze("A b. C d.");
  REQUIRE(doc.sentences.size() == 2);
  CHECK(doc.sentences[0] == Span{0, 2});
  CHECK(doc.sentences[1] == Span{2, 4});
  CHECK(doc.paragraphs.size() == 1);
  CHECK(doc.paragraphs[0] == Span{0, 2});
}

TEST_CASE("blank line separates paragraphs") {
  AnalyzedDocument doc = analyze("A b.\n\nC d.");
  CHECK(doc.sentences.size() == 2);
  REQUIRE(doc.paragraphs.size() == 2);
  CHECK(doc.paragraphs[0] == Span{0, 1});
  CHECK(doc.paragraphs[1] == Span{1, 2});
}

TEST_CASE("no terminal punctuation means one sentence") {
  AnalyzedDocument doc = analyze("just some words with no stop");
  REQUIRE(doc.sentences.size() == 1);
  CHECK(doc.sentences[0].size() == doc.tokens.size());
  CHECK(doc.paragraphs.size() == 1);
}

TEST_CASE("period before lowercase does not split") {
  AnalyzedDocument doc = analyze("the u.s. economy grew");
  CHECK(doc.sentences.size() == 1);
}

TEST_CASE("blank line closes an unterminated sentence") {
  AnalyzedDocument doc = analyze("first block\n\nSecond block.");
  CHECK(doc.sentences.size() == 2);
  CHECK(doc.paragraphs.size() == 2);
}

TEST_CASE("sentence spans cover every token exactly once") {
  const char* text =
      "Prices rose sharply on Monday. Analysts expected this!\n\n"
      "However, the bank -- a large one -- held its rate. Did it work? "
      "Nobody knows.";
  AnalyzedDocument doc = analyze(text);
  std::size_t covered = 0;
  std::size_t last_end = 0;
  for (const Span& s : doc.sentences) {
    CHECK(s.begin == last_end);
    CHECK(s.end > s.begin);
    covered += s.size();
    last_end = s.end;
  }
  CHECK(covered == doc.tokens.size());

  std::size_t sentences_covered = 0;
  std::size_t last_sent = 0;
  for (const Span& p : doc.paragraphs) {
    CHECK(p.begin == last_sent);
    sentences_covered += p.size();
    last_sent = p.end;
  }
  CHECK(sentences_covered == doc.sentences.size());
}

TEST_CASE("concatenation with a blank line composes token lists") {
  const std::vector<std::string> samples = {
      "Prices rose. Banks fell!",
      "One two three",
      "However, the -- odd -- case; with: marks?",
      "",
      "don't stop believing",
  };
  for (const auto& a : samples) {
    for (const auto& b : samples) {
      auto [ta, pa] = tokenize(a);
      auto [tb, pb] = tokenize(b);
      auto [tab, pab] = tokenize(a + "\n\n" + b);
      REQUIRE(tab.size() == ta.size() + tb.size());
      for (std::size_t i = 0; i < ta.size(); ++i)
        CHECK(tab[i].surface == ta[i].surface);
      for (std::size_t i = 0; i < tb.size(); ++i)
        CHECK(tab[ta.size() + i].surface == tb[i].surface);
      for (std::size_t c = 0; c < kPunctClassCount; ++c)
        CHECK(pab.counts[c] == pa.counts[c] + pb.counts[c]);
    }
  }
}

TEST_CASE("utf8 validation") {
  CHECK(is_valid_utf8("plain ascii"));
  CHECK(is_valid_utf8("curly ’ quote"));
  CHECK(is_valid_utf8(""));
  CHECK_FALSE(is_valid_utf8("\xff\xfe"));
  CHECK_FALSE(is_valid_utf8("truncated \xe2\x80"));
  CHECK_FALSE(is_valid_utf8("overlong \xc0\xaf"));
  std::string surrogate = "bad ";
  surrogate += '\xed';
  surrogate += '\xa0';
  surrogate += '\x80';
  CHECK_FALSE(is_valid_utf8(surrogate));
}
