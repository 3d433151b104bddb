#include "authorid/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "authorid/error.hpp"

namespace authorid {

namespace {

using nlohmann::json;

json key_to_json(const FeatureKey& key) {
  switch (key.kind) {
    case FeatureKind::unigram: return json::array({"u", key.a});
    case FeatureKind::bigram: return json::array({"b", key.a, key.b});
    case FeatureKind::pos_bigram: return json::array({"p", key.a, key.b});
    case FeatureKind::word_pos: return json::array({"wp", key.a, key.b});
    case FeatureKind::stylometric: return json::array({"s", key.a});
  }
  throw data_error("model file: bad feature kind");
}

FeatureKey key_from_json(const json& j) {
  const std::string tag = j.at(0).get<std::string>();
  if (tag == "u") return FeatureKey::unigram(j.at(1).get<std::string>());
  if (tag == "b")
    return FeatureKey::bigram(j.at(1).get<std::string>(),
                              j.at(2).get<std::string>());
  if (tag == "p")
    return FeatureKey::pos_bigram(j.at(1).get<std::string>(),
                                  j.at(2).get<std::string>());
  if (tag == "wp")
    return FeatureKey::word_pos(j.at(1).get<std::string>(),
                                j.at(2).get<std::string>());
  if (tag == "s") return FeatureKey::stylometric(j.at(1).get<std::string>());
  throw data_error("model file: unknown feature key tag: " + tag);
}

json config_to_json(const FeatureConfig& c) {
  json j;
  j["unigrams"] = c.unigrams;
  j["bigrams"] = c.bigrams;
  j["pos_bigrams"] = c.pos_bigrams;
  j["word_pos"] = c.word_pos;
  j["stylometrics"] = c.stylometrics;
  j["min_df"] = c.min_df;
  j["binary_features"] = c.binary_features;
  j["standardize"] = c.standardize;
  return j;
}

FeatureConfig config_from_json(const json& j) {
  FeatureConfig c;
  c.unigrams = j.at("unigrams").get<bool>();
  c.bigrams = j.at("bigrams").get<bool>();
  c.pos_bigrams = j.at("pos_bigrams").get<bool>();
  c.word_pos = j.at("word_pos").get<bool>();
  c.stylometrics = j.at("stylometrics").get<bool>();
  c.min_df = j.at("min_df").get<std::size_t>();
  c.binary_features = j.at("binary_features").get<bool>();
  c.standardize = j.at("standardize").get<bool>();
  return c;
}

json params_to_json(const TrainParams& p) {
  json j;
  j["cost"] = p.cost;
  j["bias"] = p.bias;
  j["eps"] = p.eps;
  j["max_iters"] = p.max_iters;
  j["loss"] = p.loss == Loss::hinge ? "hinge" : "squared_hinge";
  j["seed"] = p.seed;
  return j;
}

TrainParams params_from_json(const json& j) {
  TrainParams p;
  p.cost = j.at("cost").get<double>();
  p.bias = j.at("bias").get<double>();
  p.eps = j.at("eps").get<double>();
  p.max_iters = j.at("max_iters").get<std::size_t>();
  const std::string loss = j.at("loss").get<std::string>();
  if (loss == "hinge")
    p.loss = Loss::hinge;
  else if (loss == "squared_hinge")
    p.loss = Loss::squared_hinge;
  else
    throw data_error("model file: unknown loss: " + loss);
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

}  // namespace

std::string model_to_json(const LinearModel& model) {
  json j;
  j["version"] = 1;
  j["classes"] = model.classes;
  j["params"] = params_to_json(model.params);
  j["train_subset"] = model.train_subset;
  j["tagger_ref"] = model.tagger_ref;

  // Weight rows stored sparse: [column, value] pairs plus the row length.
  json rows = json::array();
  for (const auto& w : model.weights) {
    json row = json::array();
    for (std::size_t c = 0; c < w.size(); ++c)
      if (w[c] != 0.0) row.push_back(json::array({c, w[c]}));
    rows.push_back(std::move(row));
  }
  j["weights"] = std::move(rows);
  j["weight_dim"] =
      model.weights.empty() ? 0 : model.weights.front().size();

  json space;
  space["config"] = config_to_json(model.space.config());
  json keys = json::array();
  for (const auto& key : model.space.keys()) keys.push_back(key_to_json(key));
  space["keys"] = std::move(keys);
  json stats = json::array();
  for (const auto& s : model.space.norm_stats())
    stats.push_back(json::array({s.mean, s.stdev}));
  space["norm_stats"] = std::move(stats);
  j["feature_space"] = std::move(space);

  if (model.selection) {
    j["selection"] = model.selection->kept;
  } else {
    j["selection"] = nullptr;
  }
  return j.dump();
}

LinearModel model_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("version", 0) != 1)
    throw data_error("unrecognized model file");

  LinearModel model;
  model.classes = j.at("classes").get<std::vector<std::string>>();
  model.params = params_from_json(j.at("params"));
  model.train_subset = j.at("train_subset").get<std::string>();
  model.tagger_ref = j.at("tagger_ref").get<std::string>();

  const std::size_t wdim = j.at("weight_dim").get<std::size_t>();
  for (const auto& row : j.at("weights")) {
    std::vector<double> w(wdim, 0.0);
    for (const auto& entry : row)
      w.at(entry.at(0).get<std::size_t>()) = entry.at(1).get<double>();
    model.weights.push_back(std::move(w));
  }

  const json& space = j.at("feature_space");
  FeatureConfig config = config_from_json(space.at("config"));
  std::vector<FeatureKey> keys;
  for (const auto& k : space.at("keys")) keys.push_back(key_from_json(k));
  std::vector<NormStat> stats;
  for (const auto& s : space.at("norm_stats"))
    stats.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
  model.space = FeatureSpace(std::move(keys), config, std::move(stats));

  if (!j.at("selection").is_null()) {
    SelectedSpace sel;
    sel.kept = j.at("selection").get<std::vector<std::size_t>>();
    sel.old_to_new.assign(model.space.size(), -1);
    for (std::size_t i = 0; i < sel.kept.size(); ++i)
      sel.old_to_new.at(sel.kept[i]) = static_cast<std::int64_t>(i);
    model.selection = std::move(sel);
  }
  return model;
}

void save_model(const LinearModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write model file: " + path.string());
  out << model_to_json(model) << '\n';
}

LinearModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open model file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace authorid
