#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "authorid/rng.hpp"
#include "authorid/selection.hpp"
#include "oracles.hpp"

using namespace authorid;

namespace {

SparseVector sparse(std::initializer_list<std::pair<std::uint32_t, double>> e) {
  SparseVector v;
  v.entries = e;
  return v;
}

// Space of n plain unigram columns (no stylometrics).
FeatureSpace plain_space(std::size_t n) {
  std::vector<FeatureKey> keys;
  for (std::size_t i = 0; i < n; ++i)
    keys.push_back(FeatureKey::unigram("w" + std::string(3, 'a' + i % 26) +
                                       std::to_string(i)));
  std::sort(keys.begin(), keys.end());
  return FeatureSpace(std::move(keys), FeatureConfig{}, {});
}

}  // namespace

TEST_CASE("perfect two-class separator scores 20") {
  // Feature present in all 10 docs of class 0 and none of class 1.
  std::vector<SparseVector> vectors;
  std::vector<std::size_t> labels;
  for (int i = 0; i < 10; ++i) {
    vectors.push_back(sparse({{0, 1.0}}));
    labels.push_back(0);
  }
  for (int i = 0; i < 10; ++i) {
    vectors.push_back(sparse({}));
    labels.push_back(1);
  }
  FeatureScores scores = chi_squared_scores(vectors, labels, 2, 1);
  REQUIRE(scores.scores.size() == 1);
  CHECK(scores.scores[0] == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("constant features score zero") {
  std::vector<SparseVector> vectors;
  std::vector<std::size_t> labels;
  for (int i = 0; i < 6; ++i) {
    vectors.push_back(sparse({{0, 2.0}}));  // present everywhere
    labels.push_back(i % 2);
  }
  FeatureScores scores = chi_squared_scores(vectors, labels, 2, 2);
  CHECK(scores.scores[0] == 0.0);
  CHECK(scores.scores[1] == 0.0);  // absent everywhere
}

TEST_CASE("label out of range is rejected") {
  std::vector<SparseVector> vectors = {sparse({{0, 1.0}})};
  std::vector<std::size_t> labels = {5};
  CHECK_THROWS_AS(chi_squared_scores(vectors, labels, 2),
                  std::invalid_argument);
}

TEST_CASE("scores match the dense oracle on random datasets") {
  SplitMix64 rng(2024);
  for (int round = 0; round < 100; ++round) {
    const std::size_t features = 1 + rng.below(8);
    const std::size_t classes = 2 + rng.below(3);
    const std::size_t docs = classes + rng.below(49 - classes);

    std::vector<std::vector<int>> presence(docs, std::vector<int>(features));
    std::vector<SparseVector> vectors(docs);
    std::vector<std::size_t> labels(docs);
    for (std::size_t d = 0; d < docs; ++d) {
      labels[d] = d < classes ? d : rng.below(classes);  // every class present
      for (std::size_t f = 0; f < features; ++f) {
        presence[d][f] = rng.below(2) == 0 ? 0 : 1;
        if (presence[d][f])
          vectors[d].entries.emplace_back(static_cast<std::uint32_t>(f),
                                          1.0 + rng.next_double());
      }
    }
    auto expected = oracle::chi_squared(presence, labels, classes);
    FeatureScores got = chi_squared_scores(vectors, labels, classes, features);
    REQUIRE(got.scores.size() == expected.size());
    for (std::size_t f = 0; f < features; ++f)
      CHECK(got.scores[f] == doctest::Approx(expected[f]).epsilon(1e-10));
  }
}

TEST_CASE("scores ignore document order and value scale") {
  SplitMix64 rng(55);
  std::vector<SparseVector> vectors;
  std::vector<std::size_t> labels;
  for (int d = 0; d < 30; ++d) {
    SparseVector v;
    for (std::uint32_t f = 0; f < 5; ++f)
      if (rng.below(2)) v.entries.emplace_back(f, 1.0 + rng.next_double());
    vectors.push_back(v);
    labels.push_back(rng.below(3));
  }
  FeatureScores base = chi_squared_scores(vectors, labels, 3, 5);

  // Permute documents.
  std::vector<std::size_t> perm(vectors.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  shuffle(perm, rng);
  std::vector<SparseVector> pv;
  std::vector<std::size_t> pl;
  for (std::size_t i : perm) {
    pv.push_back(vectors[i]);
    pl.push_back(labels[i]);
  }
  FeatureScores permuted = chi_squared_scores(pv, pl, 3, 5);
  for (std::size_t f = 0; f < 5; ++f)
    CHECK(base.scores[f] == permuted.scores[f]);

  // Scale all values by a positive constant.
  std::vector<SparseVector> scaled = vectors;
  for (auto& v : scaled)
    for (auto& [col, val] : v.entries) val *= 17.5;
  FeatureScores rescored = chi_squared_scores(scaled, labels, 3, 5);
  for (std::size_t f = 0; f < 5; ++f)
    CHECK(base.scores[f] == rescored.scores[f]);
}

TEST_CASE("top-n keeps ties by lower column") {
  FeatureSpace space = plain_space(4);
  FeatureScores scores{{5.0, 1.0, 5.0, 0.0}};
  SelectedSpace sel = select_top_n(space, scores, 2);
  CHECK(sel.kept == std::vector<std::size_t>{0, 2});
}

TEST_CASE("n one picks the best column") {
  FeatureSpace space = plain_space(3);
  FeatureScores scores{{0.1, 7.3, 2.0}};
  SelectedSpace sel = select_top_n(space, scores, 1);
  CHECK(sel.kept == std::vector<std::size_t>{1});
}

TEST_CASE("n at least the space size is the identity") {
  FeatureSpace space = plain_space(5);
  FeatureScores scores{{3, 1, 4, 1, 5}};
  SelectedSpace sel = select_top_n(space, scores, 5);
  CHECK(sel.is_identity());
  SelectedSpace bigger = select_top_n(space, scores, 50);
  CHECK(bigger.is_identity());
}

TEST_CASE("n below one is rejected") {
  FeatureSpace space = plain_space(2);
  FeatureScores scores{{1, 2}};
  CHECK_THROWS_AS(select_top_n(space, scores, 0), std::invalid_argument);
}

TEST_CASE("monotonic kept sets") {
  SplitMix64 rng(7);
  FeatureSpace space = plain_space(64);
  FeatureScores scores;
  for (int i = 0; i < 64; ++i) scores.scores.push_back(rng.next_double() * 10);
  std::set<std::size_t> previous;
  for (std::size_t n : {1u, 4u, 9u, 16u, 33u, 64u}) {
    SelectedSpace sel = select_top_n(space, scores, n);
    std::set<std::size_t> kept(sel.kept.begin(), sel.kept.end());
    CHECK(kept.size() == n);
    for (std::size_t col : previous) CHECK(kept.count(col) == 1);
    previous = kept;
  }
}

TEST_CASE("stylometric columns are exempt by default") {
  // Space: 4 unigrams + the 23 stylometric keys.
  std::vector<FeatureKey> keys;
  for (int i = 0; i < 4; ++i)
    keys.push_back(FeatureKey::unigram("w" + std::to_string(i)));
  auto names = StylometricProfile::names();
  std::sort(names.begin(), names.end());
  for (const auto& n : names) keys.push_back(FeatureKey::stylometric(n));
  FeatureConfig config;
  config.stylometrics = true;
  FeatureSpace space(std::move(keys), config, {});

  FeatureScores scores;
  scores.scores.assign(space.size(), 0.0);
  scores.scores[0] = 9.0;
  scores.scores[1] = 8.0;

  SelectedSpace sel = select_top_n(space, scores, 24);
  CHECK(sel.size() == 24);  // 23 exempt + 1 ranked
  for (std::size_t c = 4; c < 27; ++c)
    CHECK(std::find(sel.kept.begin(), sel.kept.end(), c) != sel.kept.end());
  CHECK(sel.kept.front() == 0);  // the best scoring unigram survives

  SelectedSpace strict = select_top_n(space, scores, 2, false);
  CHECK(strict.kept == std::vector<std::size_t>{0, 1});
}

TEST_CASE("projection restricts and re-indexes") {
  FeatureSpace space = plain_space(4);
  FeatureScores scores{{5, 1, 5, 0}};
  SelectedSpace sel = select_top_n(space, scores, 2);  // keeps {0, 2}

  SparseVector vec = sparse({{0, 1.0}, {3, 2.0}});
  SparseVector projected = project(vec, sel);
  REQUIRE(projected.entries.size() == 1);
  CHECK(projected.entries[0] == std::pair<std::uint32_t, double>{0, 1.0});

  CHECK(project(SparseVector{}, sel).entries.empty());

  SparseVector inside = sparse({{0, 3.0}, {2, 4.0}});
  SparseVector moved = project(inside, sel);
  REQUIRE(moved.entries.size() == 2);
  CHECK(moved.entries[0] == std::pair<std::uint32_t, double>{0, 3.0});
  CHECK(moved.entries[1] == std::pair<std::uint32_t, double>{1, 4.0});
}

TEST_CASE("identity projection composes to identity") {
  FeatureSpace space = plain_space(6);
  FeatureScores scores{{1, 2, 3, 4, 5, 6}};
  SelectedSpace identity = select_top_n(space, scores, 6);
  SparseVector vec = sparse({{1, 1.5}, {4, -2.0}});
  CHECK(project(project(vec, identity), identity) == vec);
}
