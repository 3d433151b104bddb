#ifndef AUTHORID_CONFIG_HPP_
#define AUTHORID_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "authorid/corpus.hpp"
#include "authorid/eval.hpp"
#include "authorid/features.hpp"
#include "authorid/svm.hpp"

namespace authorid {

// One experiment = one config file. The file is a flat `key = value` list:
// quoted strings, numbers, true/false and [bracketed, lists]. `#` starts a
// comment. Command lines can override any key with --set key=value.
struct ExperimentConfig {
  std::string corpus_root;
  SplitRatios ratios;
  std::uint64_t split_seed = kDefaultSplitSeed;

  FeatureConfig features;
  std::optional<std::size_t> selection_n;
  bool chi2_exempt_stylometric = true;

  TrainParams train;
  std::size_t folds = 10;
  std::string tagger_model;  // path; required when POS kinds are enabled
  unsigned threads = 0;
  std::vector<std::size_t> sweep_ns;  // candidate n values for select-sweep
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Applies one `key=value` override, same keys as the file.
void apply_override(ExperimentConfig& config, const std::string& assignment);

PipelineConfig to_pipeline(const ExperimentConfig& config);

}  // namespace authorid

#endif  // AUTHORID_CONFIG_HPP_
