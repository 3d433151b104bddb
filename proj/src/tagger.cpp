#include "authorid/tagger.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "authorid/error.hpp"
#include "authorid/rng.hpp"

namespace authorid {

namespace {

constexpr const char* kStartTag = "-START-";
constexpr const char* kStart2Tag = "-START2-";
constexpr const char* kBoundaryWord = "-BOUNDARY-";

std::string lower_ascii(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
  return out;
}

// Feature template: current word, lowercased word, 1-3 char suffixes,
// 1 char prefix, previous tag, previous two tags, previous/next word, and
// word shape (has-digit, has-hyphen, is-capitalized).
std::vector<std::string> extract_features(const std::string& word,
                                          const std::string& lower,
                                          const std::string& prev_word,
                                          const std::string& next_word,
                                          const std::string& prev_tag,
                                          const std::string& prev2_tag) {
  std::vector<std::string> feats;
  feats.reserve(13);
  feats.push_back("w=" + word);
  feats.push_back("lw=" + lower);
  const std::size_t len = lower.size();
  for (std::size_t k = 1; k <= 3 && k <= len; ++k)
    feats.push_back("suf" + std::to_string(k) + "=" + lower.substr(len - k));
  feats.push_back("pre1=" + lower.substr(0, 1));
  feats.push_back("pt=" + prev_tag);
  feats.push_back("ppt=" + prev2_tag + "|" + prev_tag);
  feats.push_back("pw=" + prev_word);
  feats.push_back("nw=" + next_word);
  bool has_digit = false, has_hyphen = false;
  for (char c : word) {
    if (c >= '0' && c <= '9') has_digit = true;
    if (c == '-') has_hyphen = true;
  }
  if (has_digit) feats.push_back("shape=digit");
  if (has_hyphen) feats.push_back("shape=hyphen");
  if (!word.empty() && word[0] >= 'A' && word[0] <= 'Z')
    feats.push_back("shape=cap");
  return feats;
}

// Lazily-averaged perceptron cell.
struct Cell {
  double weight = 0.0;
  double total = 0.0;
  std::uint64_t stamp = 0;
};

class Trainer {
 public:
  Trainer(std::vector<std::string> tags, std::string default_tag)
      : tags_(std::move(tags)), default_tag_(std::move(default_tag)) {
    for (std::size_t i = 0; i < tags_.size(); ++i) tag_index_[tags_[i]] = i;
  }

  std::size_t predict(const std::vector<std::string>& feats,
                      const std::string& majority_tag) const {
    std::vector<double> scores(tags_.size(), 0.0);
    for (const auto& f : feats) {
      auto it = cells_.find(f);
      if (it == cells_.end()) continue;
      const auto& row = it->second;
      for (std::size_t t = 0; t < row.size(); ++t) scores[t] += row[t].weight;
    }
    return pick(scores, majority_tag);
  }

  // Among tied best scores, prefer the word's majority tag, then the
  // corpus-wide default, then the lowest tag index.
  std::size_t pick(const std::vector<double>& scores,
                   const std::string& majority_tag) const {
    double best = -std::numeric_limits<double>::infinity();
    for (double s : scores) best = std::max(best, s);
    auto prefer = [&](const std::string& tag) -> std::ptrdiff_t {
      auto it = tag_index_.find(tag);
      if (it != tag_index_.end() && scores[it->second] == best)
        return static_cast<std::ptrdiff_t>(it->second);
      return -1;
    };
    if (auto i = prefer(majority_tag); i >= 0) return static_cast<std::size_t>(i);
    if (auto i = prefer(default_tag_); i >= 0) return static_cast<std::size_t>(i);
    for (std::size_t t = 0; t < scores.size(); ++t)
      if (scores[t] == best) return t;
    return 0;
  }

  void update(std::size_t gold, std::size_t guess,
              const std::vector<std::string>& feats) {
    ++now_;
    if (gold == guess) return;
    for (const auto& f : feats) {
      auto& row = cells_[f];
      if (row.empty()) row.resize(tags_.size());
      bump(row[gold], +1.0);
      bump(row[guess], -1.0);
    }
  }

  std::map<std::string, std::vector<double>> averaged() const {
    std::map<std::string, std::vector<double>> out;
    if (now_ == 0) return out;
    for (const auto& [feat, row] : cells_) {
      std::vector<double> avg(row.size(), 0.0);
      bool any = false;
      for (std::size_t t = 0; t < row.size(); ++t) {
        double total = row[t].total +
                       row[t].weight * static_cast<double>(now_ - row[t].stamp);
        avg[t] = total / static_cast<double>(now_);
        if (avg[t] != 0.0) any = true;
      }
      if (any) out.emplace(feat, std::move(avg));
    }
    return out;
  }

 private:
  void bump(Cell& cell, double delta) {
    cell.total += cell.weight * static_cast<double>(now_ - cell.stamp);
    cell.stamp = now_;
    cell.weight += delta;
  }

  std::vector<std::string> tags_;
  std::string default_tag_;
  std::unordered_map<std::string, std::size_t> tag_index_;
  std::unordered_map<std::string, std::vector<Cell>> cells_;
  std::uint64_t now_ = 0;
};

std::string majority_for(const TaggerModel& model, const std::string& word) {
  auto it = model.majority.find(word);
  if (it != model.majority.end()) return it->second;
  auto lower = model.majority.find(lower_ascii(word));
  if (lower != model.majority.end()) return lower->second;
  return model.default_tag;
}

}  // namespace

std::size_t TaggerModel::tag_index(const std::string& tag) const {
  auto it = std::lower_bound(tags.begin(), tags.end(), tag);
  if (it == tags.end() || *it != tag)
    throw data_error("unknown tag: " + tag);
  return static_cast<std::size_t>(it - tags.begin());
}

TaggerModel train_tagger(const std::vector<TaggedSentence>& sentences,
                         std::size_t epochs, std::uint64_t seed) {
  if (sentences.empty())
    throw config_error("train_tagger: empty training data");

  TaggerModel model;

  // Tag inventory and per-word tag statistics.
  std::map<std::string, std::map<std::string, std::size_t>> word_tags;
  std::map<std::string, std::size_t> tag_counts;
  for (const auto& sent : sentences) {
    for (const auto& [word, t] : sent) {
      ++word_tags[word][t];
      ++tag_counts[t];
    }
  }
  for (const auto& [t, count] : tag_counts) model.tags.push_back(t);
  std::sort(model.tags.begin(), model.tags.end());

  std::size_t best_count = 0;
  for (const auto& [t, count] : tag_counts) {
    if (count > best_count) {
      best_count = count;
      model.default_tag = t;
    }
  }

  for (const auto& [word, counts] : word_tags) {
    std::size_t best = 0;
    for (const auto& [t, c] : counts) {
      if (c > best) {
        best = c;
        model.majority[word] = t;
      }
    }
    if (counts.size() == 1) model.unambiguous[word] = counts.begin()->first;
  }

  Trainer trainer(model.tags, model.default_tag);
  std::vector<std::size_t> order(sentences.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  SplitMix64 rng(seed);
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    shuffle(order, rng);
    for (std::size_t si : order) {
      const auto& sent = sentences[si];
      std::string prev = kStartTag, prev2 = kStart2Tag;
      for (std::size_t i = 0; i < sent.size(); ++i) {
        const auto& word = sent[i].first;
        const auto& gold = sent[i].second;
        std::string predicted;
        auto dict = model.unambiguous.find(word);
        if (dict != model.unambiguous.end()) {
          predicted = dict->second;
        } else {
          auto feats = extract_features(
              word, lower_ascii(word),
              i > 0 ? lower_ascii(sent[i - 1].first) : kBoundaryWord,
              i + 1 < sent.size() ? lower_ascii(sent[i + 1].first)
                                  : kBoundaryWord,
              prev, prev2);
          std::size_t guess = trainer.predict(feats, majority_for(model, word));
          trainer.update(model.tag_index(gold), guess, feats);
          predicted = model.tags[guess];
        }
        prev2 = prev;
        prev = predicted;
      }
    }
  }

  model.weights = trainer.averaged();
  return model;
}

void tag(const TaggerModel& model, std::span<Token> tokens) {
  std::string prev = kStartTag, prev2 = kStart2Tag;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token& tok = tokens[i];
    auto dict = model.unambiguous.find(tok.surface);
    if (dict != model.unambiguous.end()) {
      tok.pos = dict->second;
    } else {
      auto feats = extract_features(
          tok.surface, tok.norm,
          i > 0 ? tokens[i - 1].norm : kBoundaryWord,
          i + 1 < tokens.size() ? tokens[i + 1].norm : kBoundaryWord,
          prev, prev2);
      std::vector<double> scores(model.tags.size(), 0.0);
      for (const auto& f : feats) {
        auto it = model.weights.find(f);
        if (it == model.weights.end()) continue;
        for (std::size_t t = 0; t < it->second.size(); ++t)
          scores[t] += it->second[t];
      }
      // Tie-break mirrors training: majority tag, default tag, lowest index.
      double best = -std::numeric_limits<double>::infinity();
      for (double s : scores) best = std::max(best, s);
      std::string majority_tag = majority_for(model, tok.surface);
      std::size_t chosen = 0;
      bool found = false;
      for (const auto& candidate : {majority_tag, model.default_tag}) {
        auto it = std::find(model.tags.begin(), model.tags.end(), candidate);
        if (it != model.tags.end() &&
            scores[static_cast<std::size_t>(it - model.tags.begin())] == best) {
          chosen = static_cast<std::size_t>(it - model.tags.begin());
          found = true;
          break;
        }
      }
      if (!found) {
        for (std::size_t t = 0; t < scores.size(); ++t) {
          if (scores[t] == best) {
            chosen = t;
            break;
          }
        }
      }
      tok.pos = model.tags.empty() ? model.default_tag : model.tags[chosen];
    }
    prev2 = prev;
    prev = tok.pos;
  }
}

void tag_document(const TaggerModel& model, AnalyzedDocument& doc) {
  for (const Span& s : doc.sentences) {
    tag(model, std::span<Token>(doc.tokens.data() + s.begin, s.size()));
  }
}

double tagging_accuracy(const TaggerModel& model,
                        const std::vector<TaggedSentence>& sentences) {
  std::size_t correct = 0, total = 0;
  for (const auto& sent : sentences) {
    std::vector<Token> tokens(sent.size());
    for (std::size_t i = 0; i < sent.size(); ++i) {
      tokens[i].surface = sent[i].first;
      tokens[i].norm = lower_ascii(sent[i].first);
    }
    tag(model, tokens);
    for (std::size_t i = 0; i < sent.size(); ++i) {
      if (tokens[i].pos == sent[i].second) ++correct;
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

std::vector<TaggedSentence> read_tagged_corpus(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open tagged corpus: " + path.string());
  std::vector<TaggedSentence> sentences;
  TaggedSentence current;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!current.empty()) sentences.push_back(std::move(current));
      current.clear();
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw data_error("malformed tagged corpus line (missing tab) in " +
                       path.string() + ": " + line);
    current.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

std::string tagger_to_json(const TaggerModel& model) {
  nlohmann::json j;
  j["version"] = 1;
  j["tags"] = model.tags;
  j["default_tag"] = model.default_tag;
  j["unambiguous"] = model.unambiguous;
  j["majority"] = model.majority;
  nlohmann::json weights = nlohmann::json::object();
  for (const auto& [feat, row] : model.weights) {
    nlohmann::json per_tag = nlohmann::json::object();
    for (std::size_t t = 0; t < row.size(); ++t)
      if (row[t] != 0.0) per_tag[model.tags[t]] = row[t];
    weights[feat] = std::move(per_tag);
  }
  j["weights"] = std::move(weights);
  return j.dump();
}

TaggerModel tagger_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("version", 0) != 1)
    throw data_error("unrecognized tagger model file");
  TaggerModel model;
  model.tags = j.at("tags").get<std::vector<std::string>>();
  model.default_tag = j.at("default_tag").get<std::string>();
  model.unambiguous =
      j.at("unambiguous").get<std::map<std::string, std::string>>();
  model.majority = j.at("majority").get<std::map<std::string, std::string>>();
  for (const auto& [feat, per_tag] : j.at("weights").items()) {
    std::vector<double> row(model.tags.size(), 0.0);
    for (const auto& [t, w] : per_tag.items())
      row[model.tag_index(t)] = w.get<double>();
    model.weights.emplace(feat, std::move(row));
  }
  return model;
}

void save_tagger(const TaggerModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write tagger model: " + path.string());
  out << tagger_to_json(model) << '\n';
}

TaggerModel load_tagger(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open tagger model: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return tagger_from_json(buffer.str());
}

}  // namespace authorid
