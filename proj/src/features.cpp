#include "authorid/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "authorid/error.hpp"

namespace authorid {

const char* feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::unigram: return "unigram";
    case FeatureKind::bigram: return "bigram";
    case FeatureKind::pos_bigram: return "pos_bigram";
    case FeatureKind::word_pos: return "word_pos";
    case FeatureKind::stylometric: return "stylometric";
  }
  return "";
}

FeatureKey FeatureKey::unigram(std::string word) {
  return {FeatureKind::unigram, std::move(word), {}};
}
FeatureKey FeatureKey::bigram(std::string w1, std::string w2) {
  return {FeatureKind::bigram, std::move(w1), std::move(w2)};
}
FeatureKey FeatureKey::pos_bigram(std::string t1, std::string t2) {
  return {FeatureKind::pos_bigram, std::move(t1), std::move(t2)};
}
FeatureKey FeatureKey::word_pos(std::string word, std::string tag) {
  return {FeatureKind::word_pos, std::move(word), std::move(tag)};
}
FeatureKey FeatureKey::stylometric(std::string name) {
  return {FeatureKind::stylometric, std::move(name), {}};
}

std::string FeatureKey::to_string() const {
  std::string out = feature_kind_name(kind);
  out += ':';
  out += a;
  if (!b.empty()) {
    out += '|';
    out += b;
  }
  return out;
}

const std::vector<std::string>& StylometricProfile::names() {
  static const std::vector<std::string> kNames = {
      // Phraseology
      "lexical_diversity", "mean_word_length", "mean_sentence_length",
      "stdev_sentence_length", "mean_paragraph_length", "document_length",
      // Punctuation, per 1000 tokens
      "commas", "semicolons", "quotations", "exclamations", "colons",
      "hyphens", "double_hyphens",
      // Lexical usage, per 1000 tokens
      "and", "but", "however", "if", "that", "more", "must", "might", "this",
      "very"};
  return kNames;
}

double StylometricProfile::value(const std::string& name) const {
  if (name == "lexical_diversity") return lexical_diversity;
  if (name == "mean_word_length") return mean_word_length;
  if (name == "mean_sentence_length") return mean_sentence_length;
  if (name == "stdev_sentence_length") return stdev_sentence_length;
  if (name == "mean_paragraph_length") return mean_paragraph_length;
  if (name == "document_length") return document_length;
  if (name == "commas") return commas;
  if (name == "semicolons") return semicolons;
  if (name == "quotations") return quotations;
  if (name == "exclamations") return exclamations;
  if (name == "colons") return colons;
  if (name == "hyphens") return hyphens;
  if (name == "double_hyphens") return double_hyphens;
  if (name == "and") return and_rate;
  if (name == "but") return but_rate;
  if (name == "however") return however_rate;
  if (name == "if") return if_rate;
  if (name == "that") return that_rate;
  if (name == "more") return more_rate;
  if (name == "must") return must_rate;
  if (name == "might") return might_rate;
  if (name == "this") return this_rate;
  if (name == "very") return very_rate;
  throw std::invalid_argument("unknown stylometric feature: " + name);
}

StylometricProfile stylometrics(const AnalyzedDocument& doc) {
  StylometricProfile p;
  const std::size_t n = doc.tokens.size();
  p.document_length = static_cast<double>(n);
  if (n == 0) return p;  // all-zero profile, lexical_diversity defined as 0

  std::unordered_set<std::string> stems;
  std::size_t total_chars = 0;
  std::map<std::string, std::uint64_t> lexical_counts;
  for (const auto& t : doc.tokens) {
    stems.insert(t.stem);
    total_chars += t.norm.size();
    ++lexical_counts[t.norm];
  }
  p.lexical_diversity = static_cast<double>(n) / static_cast<double>(stems.size());
  p.mean_word_length = static_cast<double>(total_chars) / static_cast<double>(n);

  if (!doc.sentences.empty()) {
    double mean = 0;
    for (const Span& s : doc.sentences) mean += static_cast<double>(s.size());
    mean /= static_cast<double>(doc.sentences.size());
    p.mean_sentence_length = mean;
    if (doc.sentences.size() > 1) {
      double ss = 0;
      for (const Span& s : doc.sentences) {
        double d = static_cast<double>(s.size()) - mean;
        ss += d * d;
      }
      p.stdev_sentence_length =
          std::sqrt(ss / static_cast<double>(doc.sentences.size() - 1));
    }
  }

  if (!doc.paragraphs.empty()) {
    double total = 0;
    for (const Span& para : doc.paragraphs) {
      for (std::size_t s = para.begin; s < para.end; ++s)
        total += static_cast<double>(doc.sentences[s].size());
    }
    p.mean_paragraph_length = total / static_cast<double>(doc.paragraphs.size());
  }

  const double per1000 = 1000.0 / static_cast<double>(n);
  p.commas = per1000 * static_cast<double>(doc.punctuation[Punct::comma]);
  p.semicolons = per1000 * static_cast<double>(doc.punctuation[Punct::semicolon]);
  p.quotations = per1000 * static_cast<double>(doc.punctuation[Punct::quotation]);
  p.exclamations =
      per1000 * static_cast<double>(doc.punctuation[Punct::exclamation]);
  p.colons = per1000 * static_cast<double>(doc.punctuation[Punct::colon]);
  p.hyphens = per1000 * static_cast<double>(doc.punctuation[Punct::hyphen]);
  p.double_hyphens =
      per1000 * static_cast<double>(doc.punctuation[Punct::double_hyphen]);

  auto rate = [&](const char* word) {
    auto it = lexical_counts.find(word);
    return it == lexical_counts.end()
               ? 0.0
               : per1000 * static_cast<double>(it->second);
  };
  p.and_rate = rate("and");
  p.but_rate = rate("but");
  p.however_rate = rate("however");
  p.if_rate = rate("if");
  p.that_rate = rate("that");
  p.more_rate = rate("more");
  p.must_rate = rate("must");
  p.might_rate = rate("might");
  p.this_rate = rate("this");
  p.very_rate = rate("very");
  return p;
}

bool FeatureConfig::wants_text(FeatureKind kind) const {
  switch (kind) {
    case FeatureKind::unigram: return unigrams;
    case FeatureKind::bigram: return bigrams;
    case FeatureKind::pos_bigram: return pos_bigrams;
    case FeatureKind::word_pos: return word_pos;
    case FeatureKind::stylometric: return false;
  }
  return false;
}

std::map<FeatureKey, std::uint32_t> text_feature_counts(
    const AnalyzedDocument& doc, const FeatureConfig& config) {
  if (config.wants_pos() && !doc.tokens.empty() && !doc.has_pos_tags())
    throw std::logic_error(
        "text_feature_counts: POS features requested but tokens are untagged");

  std::map<FeatureKey, std::uint32_t> counts;
  if (config.unigrams) {
    for (const auto& t : doc.tokens) ++counts[FeatureKey::unigram(t.norm)];
  }
  if (config.word_pos) {
    for (const auto& t : doc.tokens)
      ++counts[FeatureKey::word_pos(t.norm, t.pos)];
  }
  if (config.bigrams || config.pos_bigrams) {
    for (const Span& s : doc.sentences) {
      for (std::size_t i = s.begin; i + 1 < s.end; ++i) {
        if (config.bigrams)
          ++counts[FeatureKey::bigram(doc.tokens[i].norm,
                                      doc.tokens[i + 1].norm)];
        if (config.pos_bigrams)
          ++counts[FeatureKey::pos_bigram(doc.tokens[i].pos,
                                          doc.tokens[i + 1].pos)];
      }
    }
  }
  return counts;
}

double SparseVector::dot(std::span<const double> dense) const {
  double sum = 0;
  for (const auto& [col, val] : entries) sum += dense[col] * val;
  return sum;
}

FeatureSpace::FeatureSpace(std::vector<FeatureKey> keys, FeatureConfig config,
                           std::vector<NormStat> norm_stats)
    : keys_(std::move(keys)),
      config_(config),
      norm_stats_(std::move(norm_stats)) {
  for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], i);
}

std::optional<std::size_t> FeatureSpace::index_of(const FeatureKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FeatureSpace::first_stylometric_column() const {
  std::size_t i = keys_.size();
  while (i > 0 && keys_[i - 1].kind == FeatureKind::stylometric) --i;
  return i;
}

bool FeatureSpace::operator==(const FeatureSpace& other) const {
  return keys_ == other.keys_ &&
         std::equal(norm_stats_.begin(), norm_stats_.end(),
                    other.norm_stats_.begin(), other.norm_stats_.end(),
                    [](const NormStat& a, const NormStat& b) {
                      return a.mean == b.mean && a.stdev == b.stdev;
                    });
}

FeatureSpace build_space(std::span<const AnalyzedDocument> train_docs,
                         const FeatureConfig& config) {
  if (train_docs.empty())
    throw config_error("build_space: no training documents");

  std::map<FeatureKey, std::size_t> df;
  for (const auto& doc : train_docs) {
    for (const auto& [key, count] : text_feature_counts(doc, config))
      ++df[key];
  }

  std::vector<FeatureKey> keys;
  keys.reserve(df.size() + 23);
  for (const auto& [key, docs] : df)
    if (docs >= config.min_df) keys.push_back(key);

  if (config.stylometrics) {
    std::vector<std::string> names = StylometricProfile::names();
    std::sort(names.begin(), names.end());
    for (auto& name : names)
      keys.push_back(FeatureKey::stylometric(std::move(name)));
  }
  // df map iteration is already (kind, a, b)-ordered; the stylometric tail
  // was appended sorted, so the whole list is sorted.

  std::vector<NormStat> stats;
  if (config.stylometrics && config.standardize) {
    std::size_t first = keys.size() - 23;
    stats.resize(23);
    std::vector<StylometricProfile> profiles;
    profiles.reserve(train_docs.size());
    for (const auto& doc : train_docs) profiles.push_back(stylometrics(doc));
    const double inv_n = 1.0 / static_cast<double>(train_docs.size());
    for (std::size_t c = 0; c < 23; ++c) {
      const std::string& name = keys[first + c].a;
      // Sum in value order so the statistics are bit-identical regardless
      // of training-document order.
      std::vector<double> values;
      values.reserve(profiles.size());
      for (const auto& p : profiles) values.push_back(p.value(name));
      std::sort(values.begin(), values.end());
      double mean = 0;
      for (double v : values) mean += v;
      mean *= inv_n;
      double var = 0;
      for (double v : values) {
        double d = v - mean;
        var += d * d;
      }
      stats[c] = {mean, std::sqrt(var * inv_n)};
    }
  }
  return FeatureSpace(std::move(keys), config, std::move(stats));
}

SparseVector vectorize(const AnalyzedDocument& doc, const FeatureSpace& space) {
  const FeatureConfig& config = space.config();
  SparseVector vec;

  for (const auto& [key, count] : text_feature_counts(doc, config)) {
    auto col = space.index_of(key);
    if (!col) continue;
    double value = config.binary_features ? 1.0 : static_cast<double>(count);
    if (value != 0.0)
      vec.entries.emplace_back(static_cast<std::uint32_t>(*col), value);
  }

  if (config.stylometrics) {
    StylometricProfile profile = stylometrics(doc);
    const std::size_t first = space.first_stylometric_column();
    const auto& stats = space.norm_stats();
    for (std::size_t c = first; c < space.size(); ++c) {
      double v = profile.value(space.keys()[c].a);
      if (config.standardize && !stats.empty()) {
        const NormStat& s = stats[c - first];
        v = s.stdev > 0.0 ? (v - s.mean) / s.stdev : 0.0;
      }
      if (v != 0.0)
        vec.entries.emplace_back(static_cast<std::uint32_t>(c), v);
    }
  }

  // map iteration already yields ascending columns, but keep the invariant
  // explicit.
  std::sort(vec.entries.begin(), vec.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return vec;
}

}  // namespace authorid
