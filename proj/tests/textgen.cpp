#include "textgen.hpp"

#include <array>
#include <map>

namespace textgen {

using authorid::SplitMix64;
using authorid::TaggedSentence;

namespace {

using Pool = std::vector<std::string>;

const std::array<Pool, kTopicCount>& topic_nouns() {
  static const std::array<Pool, kTopicCount> pools = {{
      {"market", "price", "share", "profit", "rate", "bank", "fund",
       "dividend", "forecast", "deal"},
      {"factory", "plant", "output", "steel", "export", "producer", "supply",
       "contract", "shipment", "mill"},
      {"computer", "network", "software", "chip", "phone", "system",
       "server", "licence", "start", "upgrade"},
      {"government", "minister", "election", "policy", "parliament",
       "treaty", "budget", "vote", "reform", "summit"},
      {"oil", "gas", "barrel", "pipeline", "refinery", "crude", "field",
       "tanker", "cargo", "grid"},
      {"store", "brand", "sale", "customer", "product", "chain", "outlet",
       "supplier", "margin", "discount"},
      {"drug", "vaccine", "trial", "hospital", "patient", "treatment",
       "regulator", "dose", "study", "clinic"},
      {"airline", "flight", "carrier", "route", "airport", "fleet", "pilot",
       "traffic", "fare", "crew"},
  }};
  return pools;
}

const std::map<std::string, Pool>& tag_pools() {
  static const std::map<std::string, Pool> pools = {
      {"DT", {"the", "a", "this", "that", "each", "another"}},
      {"NNS",
       {"markets", "prices", "shares", "profits", "rates", "banks",
        "analysts", "investors", "orders", "exports", "companies",
        "officials", "workers", "talks", "results", "figures", "costs",
        "sales", "plans", "reports", "supplies", "votes", "deals",
        "trades", "offers"}},
      {"NNP",
       {"London", "Paris", "Tokyo", "Washington", "Beijing", "Brussels",
        "Moscow", "Geneva", "Sydney", "Madrid"}},
      {"VBD",
       {"rose", "fell", "said", "gained", "dropped", "climbed", "slipped",
        "jumped", "signed", "announced", "reported", "raised", "held",
        "warned", "added", "eased", "surged", "cut", "closed", "offered",
        "traded"}},
      {"VBZ",
       {"is", "says", "expects", "remains", "shows", "holds", "rises",
        "falls", "sees", "wants", "plans", "reports", "supplies", "votes",
        "deals", "trades", "offers"}},
      {"VB",
       {"be", "buy", "sell", "raise", "boost", "keep", "meet", "pay",
        "open", "expand", "reduce", "cut", "supply", "vote", "deal",
        "close", "report", "trade", "offer"}},
      {"VBP", {"are", "say", "expect", "remain", "see", "want", "hold"}},
      {"VBG",
       {"rising", "falling", "buying", "selling", "growing", "trading",
        "expecting", "planning", "moving", "climbing"}},
      {"VBN",
       {"expected", "reported", "raised", "held", "based", "linked",
        "planned", "cut", "closed", "offered", "traded"}},
      {"JJ",
       {"strong", "weak", "new", "high", "low", "early", "late", "major",
        "small", "large", "foreign", "domestic", "annual", "official",
        "financial", "steady", "sharp", "firm", "close"}},
      {"RB",
       {"sharply", "slightly", "steadily", "again", "still", "strongly",
        "firmly", "broadly", "modestly", "quickly", "early", "late"}},
      {"CC", {"and", "but", "or"}},
      {"IN",
       {"in", "on", "at", "by", "from", "with", "after", "before", "over",
        "under", "against", "during", "of", "that"}},
      {"PRP", {"it", "they", "he", "she", "we"}},
      {"PRP$", {"its", "their", "his", "her"}},
      {"TO", {"to"}},
      {"MD",
       {"will", "would", "could", "may", "might", "must", "should", "can"}},
      {"CD",
       {"one", "two", "three", "five", "ten", "seven", "twenty", "fifteen"}},
      {"EX", {"there"}},
  };
  return pools;
}

// Clause templates; "NN" draws from the active topic pool.
const std::vector<std::vector<std::string>>& clause_templates() {
  static const std::vector<std::vector<std::string>> templates = {
      {"DT", "JJ", "NN", "VBD", "IN", "DT", "NN"},
      {"DT", "NN", "VBZ", "JJ"},
      {"PRP", "VBD", "DT", "NN"},
      {"DT", "NNS", "VBP", "VBG", "JJ", "NNS"},
      {"NNP", "VBD", "IN", "DT", "NN"},
      {"EX", "VBZ", "DT", "JJ", "NN"},
      {"DT", "NN", "MD", "VB", "DT", "NN"},
      {"PRP", "VBZ", "TO", "VB", "NNS"},
      {"JJ", "NNS", "VBD", "RB"},
      {"DT", "NN", "IN", "DT", "NN", "VBZ", "JJ"},
      {"NNP", "CC", "NNP", "VBD", "DT", "NN"},
      {"DT", "NN", "VBD", "IN", "CD", "NNS"},
      {"PRP$", "NN", "VBZ", "VBG"},
      {"DT", "NN", "VBD", "RB", "IN", "DT", "JJ", "NN"},
      {"NNS", "VBD", "VBN", "IN", "DT", "NN"},
      {"PRP", "VBP", "DT", "NN", "MD", "VB"},
  };
  return templates;
}

std::string pick(const Pool& pool, SplitMix64& rng) {
  return pool[static_cast<std::size_t>(rng.below(pool.size()))];
}

std::string pick_word(const std::string& tag, std::size_t topic,
                      SplitMix64& rng) {
  if (tag == "NN") return pick(topic_nouns()[topic], rng);
  return pick(tag_pools().at(tag), rng);
}

TaggedSentence make_clause(SplitMix64& rng, std::size_t topic) {
  const auto& templates = clause_templates();
  const auto& tmpl =
      templates[static_cast<std::size_t>(rng.below(templates.size()))];
  TaggedSentence clause;
  clause.reserve(tmpl.size());
  for (const auto& tag : tmpl)
    clause.emplace_back(pick_word(tag, topic, rng), tag);
  return clause;
}

void capitalize_first(std::string& word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z')
    word[0] = static_cast<char>(word[0] - 'a' + 'A');
}

bool roll(SplitMix64& rng, double probability) {
  return rng.next_double() < probability;
}

}  // namespace

TaggedSentence make_tagged_sentence(SplitMix64& rng, std::size_t topic) {
  TaggedSentence sentence = make_clause(rng, topic);
  if (roll(rng, 0.35)) {
    // Join a second clause with a conjunction.
    sentence.emplace_back(pick(tag_pools().at("CC"), rng), "CC");
    TaggedSentence tail = make_clause(rng, topic);
    sentence.insert(sentence.end(), tail.begin(), tail.end());
  }
  capitalize_first(sentence.front().first);
  return sentence;
}

std::vector<TaggedSentence> make_treebank(std::size_t sentences,
                                          std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<TaggedSentence> out;
  out.reserve(sentences);
  for (std::size_t i = 0; i < sentences; ++i)
    out.push_back(make_tagged_sentence(rng, i % kTopicCount));
  return out;
}

const std::vector<AuthorStyle>& desk_authors() {
  static const std::vector<AuthorStyle> authors = [] {
    std::vector<AuthorStyle> a(10);
    a[0] = {"alder",   {0, 1}, 0.45, 0.8, 0.00, 0.00, 0.00, 0.15, 0.00,
            0.30,      "however", "might", 0.15, 0.05, 3, 6, 2, 4};
    a[1] = {"barnes",  {0, 2}, 0.20, 0.3, 0.25, 0.00, 0.00, 0.05, 0.10,
            0.05,      "meanwhile", "must", 0.02, 0.02, 4, 7, 2, 3};
    a[2] = {"casey",   {1, 3}, 0.60, 0.9, 0.00, 0.20, 0.00, 0.10, 0.00,
            0.40,      "however", "could", 0.25, 0.20, 2, 5, 3, 5};
    a[3] = {"dalton",  {2, 4}, 0.10, 0.2, 0.00, 0.00, 0.20, 0.02, 0.00,
            0.02,      "still", "will", 0.02, 0.01, 3, 5, 1, 3};
    a[4] = {"ellis",   {3, 5}, 0.50, 0.7, 0.10, 0.05, 0.00, 0.30, 0.15,
            0.20,      "moreover", "should", 0.10, 0.08, 4, 8, 2, 4};
    a[5] = {"frost",   {4, 6}, 0.30, 0.5, 0.00, 0.30, 0.05, 0.08, 0.00,
            0.10,      "meanwhile", "may", 0.05, 0.30, 3, 6, 2, 5};
    a[6] = {"gibson",  {5, 7}, 0.40, 0.6, 0.05, 0.00, 0.00, 0.40, 0.20,
            0.15,      "however", "must", 0.30, 0.03, 2, 4, 3, 6};
    a[7] = {"hale",    {6, 0}, 0.25, 0.4, 0.00, 0.10, 0.10, 0.12, 0.00,
            0.50,      "instead", "would", 0.08, 0.12, 5, 9, 1, 2};
    a[8] = {"ingram",  {7, 1}, 0.55, 1.0, 0.15, 0.00, 0.00, 0.20, 0.05,
            0.25,      "however", "can", 0.18, 0.06, 3, 7, 2, 3};
    a[9] = {"jarvis",  {0, 7}, 0.15, 0.1, 0.00, 0.15, 0.15, 0.03, 0.00,
            0.08,      "again", "might", 0.03, 0.40, 2, 6, 4, 6};
    return a;
  }();
  return authors;
}

namespace {

std::string render_clause(const AuthorStyle& style, SplitMix64& rng) {
  const std::size_t topic =
      style.topics[static_cast<std::size_t>(rng.below(style.topics.size()))];
  TaggedSentence clause = make_clause(rng, topic);
  std::string out;
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i > 0) out += ' ';
    // Author habits applied at render time.
    if (clause[i].second == "JJ" && roll(rng, style.intensifier))
      out += "very ";
    if (clause[i].second == "MD")
      clause[i].first = style.favorite_modal;
    if (clause[i].second == "NN" && roll(rng, style.quote_phrase)) {
      out += '"' + clause[i].first + '"';
      continue;
    }
    out += clause[i].first;
  }
  return out;
}

std::string render_sentence(const AuthorStyle& style, SplitMix64& rng) {
  std::string sentence;
  if (roll(rng, style.adverb_opener)) {
    sentence += style.favorite_adverb;
    sentence += ", ";
  }
  if (roll(rng, style.conditional)) {
    sentence += "if ";
    sentence += render_clause(style, rng);
    sentence += ", ";
  }
  sentence += render_clause(style, rng);
  if (roll(rng, style.extra_clause)) {
    if (roll(rng, style.semicolon_join)) {
      sentence += "; ";
    } else if (roll(rng, style.dash_aside)) {
      sentence += " -- ";
    } else {
      if (roll(rng, style.comma_join)) sentence += ',';
      sentence += ' ';
      sentence += roll(rng, 0.5) ? "and " : "but ";
    }
    sentence += render_clause(style, rng);
  }
  if (roll(rng, style.colon_intro)) {
    sentence += ": ";
    sentence += render_clause(style, rng);
  }
  capitalize_first(sentence);
  sentence += roll(rng, style.exclaim) ? '!' : '.';
  return sentence;
}

}  // namespace

std::string make_document(const AuthorStyle& style, SplitMix64& rng) {
  const std::size_t paragraphs =
      style.min_paragraphs +
      static_cast<std::size_t>(
          rng.below(style.max_paragraphs - style.min_paragraphs + 1));
  std::string doc;
  for (std::size_t p = 0; p < paragraphs; ++p) {
    if (p > 0) doc += "\n\n";
    const std::size_t sentences =
        style.min_sentences +
        static_cast<std::size_t>(
            rng.below(style.max_sentences - style.min_sentences + 1));
    for (std::size_t s = 0; s < sentences; ++s) {
      if (s > 0) doc += ' ';
      doc += render_sentence(style, rng);
    }
  }
  doc += '\n';
  return doc;
}

}  // namespace textgen
