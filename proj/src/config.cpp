#include "authorid/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "authorid/error.hpp"

namespace authorid {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(const std::string& value, const std::string& key) {
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
    return value.substr(1, value.size() - 2);
  if (!value.empty() && value.front() != '[' && value.front() != '"')
    return value;  // bare words accepted for convenience
  throw config_error("config: expected a string for " + key);
}

double parse_number(const std::string& value, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw config_error("config: expected a number for " + key + ", got '" +
                       value + "'");
  }
}

std::uint64_t parse_unsigned(const std::string& value, const std::string& key) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw config_error("config: expected a non-negative integer for " + key +
                       ", got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw config_error("config: expected true/false for " + key + ", got '" +
                     value + "'");
}

std::vector<std::string> parse_list(const std::string& value,
                                    const std::string& key) {
  if (value.size() < 2 || value.front() != '[' || value.back() != ']')
    throw config_error("config: expected a [list] for " + key);
  std::vector<std::string> items;
  std::string body = value.substr(1, value.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

void set_feature_kinds(FeatureConfig& f, const std::vector<std::string>& kinds,
                       const std::string& key) {
  f.unigrams = f.bigrams = f.pos_bigrams = f.word_pos = f.stylometrics = false;
  for (auto raw : kinds) {
    std::string kind = unquote(raw, key);
    if (kind == "unigram") f.unigrams = true;
    else if (kind == "bigram") f.bigrams = true;
    else if (kind == "pos_bigram") f.pos_bigrams = true;
    else if (kind == "word_pos") f.word_pos = true;
    else if (kind == "stylometric") f.stylometrics = true;
    else
      throw config_error("config: unknown feature kind '" + kind + "'");
  }
}

void assign(ExperimentConfig& c, const std::string& key,
            const std::string& value) {
  if (key == "corpus_root") {
    c.corpus_root = unquote(value, key);
  } else if (key == "split_seed") {
    c.split_seed = parse_unsigned(value, key);
  } else if (key == "split_ratios") {
    auto items = parse_list(value, key);
    if (items.size() != 3)
      throw config_error("config: split_ratios needs exactly 3 values");
    c.ratios.development = parse_number(items[0], key);
    c.ratios.cross_validation = parse_number(items[1], key);
    c.ratios.holdout = parse_number(items[2], key);
  } else if (key == "features") {
    set_feature_kinds(c.features, parse_list(value, key), key);
  } else if (key == "min_df") {
    c.features.min_df = parse_unsigned(value, key);
  } else if (key == "binary_features") {
    c.features.binary_features = parse_bool(value, key);
  } else if (key == "standardize") {
    c.features.standardize = parse_bool(value, key);
  } else if (key == "selection_n") {
    std::uint64_t n = parse_unsigned(value, key);
    if (n == 0)
      c.selection_n.reset();  // 0 disables selection
    else
      c.selection_n = n;
  } else if (key == "chi2_exempt_stylometric") {
    c.chi2_exempt_stylometric = parse_bool(value, key);
  } else if (key == "svm_cost") {
    c.train.cost = parse_number(value, key);
  } else if (key == "svm_bias") {
    c.train.bias = parse_number(value, key);
  } else if (key == "svm_eps") {
    c.train.eps = parse_number(value, key);
  } else if (key == "svm_max_iters") {
    c.train.max_iters = parse_unsigned(value, key);
  } else if (key == "svm_loss") {
    std::string loss = unquote(value, key);
    if (loss == "hinge") c.train.loss = Loss::hinge;
    else if (loss == "squared_hinge") c.train.loss = Loss::squared_hinge;
    else throw config_error("config: unknown svm_loss '" + loss + "'");
  } else if (key == "svm_seed") {
    c.train.seed = parse_unsigned(value, key);
  } else if (key == "folds") {
    c.folds = parse_unsigned(value, key);
  } else if (key == "tagger_model") {
    c.tagger_model = unquote(value, key);
  } else if (key == "threads") {
    c.threads = static_cast<unsigned>(parse_unsigned(value, key));
  } else if (key == "sweep_ns") {
    c.sweep_ns.clear();
    for (const auto& item : parse_list(value, key))
      c.sweep_ns.push_back(parse_unsigned(item, key));
  } else {
    throw config_error("config: unknown key '" + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    // Strip comments outside quotes.
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quotes = !in_quotes;
      if (line[i] == '#' && !in_quotes) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config: line " + std::to_string(line_no) +
                         " is not 'key = value'");
    assign(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void apply_override(ExperimentConfig& config, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw config_error("--set expects key=value, got '" + assignment + "'");
  assign(config, trim(assignment.substr(0, eq)),
         trim(assignment.substr(eq + 1)));
}

PipelineConfig to_pipeline(const ExperimentConfig& config) {
  PipelineConfig p;
  p.features = config.features;
  p.selection_n = config.selection_n;
  p.chi2_exempt_stylometric = config.chi2_exempt_stylometric;
  p.train = config.train;
  return p;
}

}  // namespace authorid
