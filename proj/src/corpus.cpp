#include "authorid/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "authorid/error.hpp"
#include "authorid/parallel.hpp"
#include "authorid/rng.hpp"
#include "authorid/textproc.hpp"

namespace fs = std::filesystem;

namespace authorid {

const char* const kSubsetNames[3] = {"development", "cross-validation",
                                     "holdout"};

std::size_t Corpus::author_index(const std::string& name) const {
  auto it = std::lower_bound(authors.begin(), authors.end(), name);
  if (it == authors.end() || *it != name)
    throw data_error("unknown author: " + name);
  return static_cast<std::size_t>(it - authors.begin());
}

const Document* Corpus::find(const std::string& id) const {
  for (const auto& d : documents)
    if (d.id == id) return &d;
  return nullptr;
}

namespace {

std::string trim_copy(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n\f\v");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(b, e - b + 1);
}

std::string relative_id(const fs::path& file, const fs::path& root) {
  return file.lexically_relative(root).generic_string();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot read file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Collects (author, file) pairs from one author directory, skipping
// dotfiles.
void collect_author_files(
    const fs::path& author_dir,
    std::vector<std::pair<std::string, fs::path>>& out) {
  std::string author = author_dir.filename().string();
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(author_dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().filename().string().starts_with(".")) continue;
    files.push_back(entry.path());
  }
  if (files.empty())
    throw data_error("corpus-format: author directory has no files: " +
                     author_dir.string());
  std::sort(files.begin(), files.end());
  for (auto& f : files) out.emplace_back(author, std::move(f));
}

}  // namespace

Corpus load_corpus(const fs::path& root) {
  std::error_code ec;
  if (!fs::exists(root, ec) || ec)
    throw data_error("corpus root does not exist: " + root.string());
  if (!fs::is_directory(root))
    throw data_error("corpus root is not a directory: " + root.string());

  // C50train / C50test children are descended into and merged; any other
  // directory directly under the root is an author directory.
  std::vector<fs::path> author_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    std::string name = entry.path().filename().string();
    if (name == "C50train" || name == "C50test") {
      for (const auto& child : fs::directory_iterator(entry.path()))
        if (child.is_directory()) author_dirs.push_back(child.path());
    } else {
      author_dirs.push_back(entry.path());
    }
  }
  std::sort(author_dirs.begin(), author_dirs.end());

  std::vector<std::pair<std::string, fs::path>> files;
  for (const auto& d : author_dirs) collect_author_files(d, files);

  if (files.empty())
    throw data_error("corpus-format: no author directories under " +
                     root.string());

  std::vector<Document> docs(files.size());
  parallel_for(files.size(), [&](std::size_t i) {
    const auto& [author, path] = files[i];
    std::string text = read_file(path);
    if (!is_valid_utf8(text))
      throw data_error("encoding: file is not valid UTF-8: " + path.string());
    if (trim_copy(text).empty())
      throw data_error("corpus-format: file is empty: " + path.string());
    docs[i] = Document{relative_id(path, root), author, std::move(text)};
  });

  // Deterministic order: author, then filename, with the full id as the
  // tie-break when the same filename appears in both C50train and C50test.
  auto filename_of = [](const std::string& id) {
    auto slash = id.rfind('/');
    return slash == std::string::npos ? id : id.substr(slash + 1);
  };
  std::sort(docs.begin(), docs.end(),
            [&](const Document& a, const Document& b) {
              if (a.author != b.author) return a.author < b.author;
              std::string fa = filename_of(a.id), fb = filename_of(b.id);
              if (fa != fb) return fa < fb;
              return a.id < b.id;
            });

  Corpus corpus;
  for (auto& d : docs) {
    if (corpus.authors.empty() || corpus.authors.back() != d.author)
      corpus.authors.push_back(d.author);
    corpus.documents.push_back(std::move(d));
  }
  std::sort(corpus.authors.begin(), corpus.authors.end());
  return corpus;
}

const std::vector<std::string>& SplitAssignment::subset(
    const std::string& name) const {
  if (name == kSubsetNames[0]) return development;
  if (name == kSubsetNames[1]) return cross_validation;
  if (name == kSubsetNames[2]) return holdout;
  throw config_error("unknown subset name: " + name +
                     " (expected development, cross-validation or holdout)");
}

namespace {

// Largest-remainder apportionment of n into three parts.
std::array<std::size_t, 3> apportion(std::size_t n,
                                     const std::array<double, 3>& ratios) {
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    double exact = ratios[s] * static_cast<double>(n);
    counts[s] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainders[s] = exact - static_cast<double>(counts[s]);
    assigned += counts[s];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++counts[order[i % 3]];
  return counts;
}

}  // namespace

SplitAssignment make_split(const Corpus& corpus, SplitRatios ratios,
                           std::uint64_t seed) {
  const std::array<double, 3> r{ratios.development, ratios.cross_validation,
                                ratios.holdout};
  for (double v : r)
    if (v < 0.0 || v > 1.0)
      throw config_error("split ratio outside [0,1]");
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9)
    throw config_error("split ratios must sum to 1");

  std::map<std::string, std::vector<std::string>> by_author;
  for (const auto& d : corpus.documents) by_author[d.author].push_back(d.id);

  SplitAssignment split;
  split.seed = seed;
  for (auto& [author, ids] : by_author) {
    // Stream seed derived from (seed, author) so each author's shuffle is
    // independent of every other author's document count.
    SplitMix64 rng(seed ^ hash64(author));
    shuffle(ids, rng);
    auto counts = apportion(ids.size(), r);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      auto* target = s == 0   ? &split.development
                     : s == 1 ? &split.cross_validation
                              : &split.holdout;
      for (std::size_t i = 0; i < counts[s]; ++i, ++pos)
        target->push_back(ids[pos]);
    }
  }
  std::sort(split.development.begin(), split.development.end());
  std::sort(split.cross_validation.begin(), split.cross_validation.end());
  std::sort(split.holdout.begin(), split.holdout.end());
  return split;
}

FoldAssignment make_folds(
    const std::vector<std::pair<std::string, std::string>>& docs,
    std::size_t k, std::uint64_t seed) {
  if (k < 2) throw config_error("make_folds: k must be at least 2");
  if (docs.empty()) throw config_error("make_folds: no documents");

  std::map<std::string, std::vector<std::string>> by_author;
  for (const auto& [id, author] : docs) by_author[author].push_back(id);

  FoldAssignment folds;
  folds.k = k;
  std::size_t cursor = 0;  // rolling fold start keeps global sizes balanced
  for (auto& [author, ids] : by_author) {
    SplitMix64 rng(seed ^ hash64(author));
    shuffle(ids, rng);
    for (std::size_t j = 0; j < ids.size(); ++j)
      folds.fold_of[ids[j]] = (cursor + j) % k;
    cursor = (cursor + ids.size()) % k;
  }
  return folds;
}

std::string split_to_json(const SplitAssignment& split) {
  nlohmann::json j;
  j["version"] = 1;
  j["seed"] = split.seed;
  j["development"] = split.development;
  j["cross_validation"] = split.cross_validation;
  j["holdout"] = split.holdout;
  return j.dump();
}

SplitAssignment split_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("version", 0) != 1)
    throw data_error("unrecognized split file");
  SplitAssignment split;
  split.seed = j.at("seed").get<std::uint64_t>();
  split.development = j.at("development").get<std::vector<std::string>>();
  split.cross_validation =
      j.at("cross_validation").get<std::vector<std::string>>();
  split.holdout = j.at("holdout").get<std::vector<std::string>>();
  return split;
}

void save_split(const SplitAssignment& split, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write split file: " + path.string());
  out << split_to_json(split) << '\n';
}

SplitAssignment load_split(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open split file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return split_from_json(buffer.str());
}

}  // namespace authorid
