#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "authorid/error.hpp"
#include "authorid/eval.hpp"
#include "authorid/rng.hpp"
#include "oracles.hpp"

using namespace authorid;

namespace {

ConfusionMatrix matrix_of(std::vector<std::vector<std::uint64_t>> counts) {
  ConfusionMatrix m;
  for (std::size_t i = 0; i < counts.size(); ++i)
    m.classes.push_back("c" + std::to_string(i));
  m.counts = std::move(counts);
  return m;
}

}  // namespace

TEST_CASE("confusion matrix basics") {
  std::vector<std::size_t> gold = {0, 1, 1};
  std::vector<std::size_t> pred = {0, 1, 1};
  ConfusionMatrix m = confusion(gold, pred, {"a", "b"});
  CHECK(m.counts[0][0] == 1);
  CHECK(m.counts[1][1] == 2);
  CHECK(m.counts[0][1] == 0);
  CHECK(m.total() == 3);
  CHECK(accuracy(m) == doctest::Approx(1.0));

  std::vector<std::size_t> gold2 = {0, 0};
  std::vector<std::size_t> pred2 = {1, 1};
  ConfusionMatrix m2 = confusion(gold2, pred2, {"a", "b"});
  CHECK(m2.counts[0][1] == 2);
  CHECK(accuracy(m2) == 0.0);

  ConfusionMatrix empty = confusion({}, {}, {"a", "b"});
  CHECK(empty.total() == 0);

  std::vector<std::size_t> bad = {7};
  std::vector<std::size_t> one = {0};
  CHECK_THROWS_AS(confusion(one, bad, {"a", "b"}), std::invalid_argument);
}

TEST_CASE("kappa hand cases") {
  CHECK(kappa(matrix_of({{10, 0}, {0, 5}})) == 1.0);
  // [[20,5],[10,15]]: p_o = 0.7, p_e = 0.5, kappa = 0.4.
  CHECK(kappa(matrix_of({{20, 5}, {10, 15}})) == doctest::Approx(0.4));
  // Constant prediction on balanced gold: kappa 0.
  CHECK(kappa(matrix_of({{10, 0}, {10, 0}})) == doctest::Approx(0.0));
  CHECK_THROWS_AS(kappa(matrix_of({{0, 0}, {0, 0}})), std::invalid_argument);
}

TEST_CASE("kappa edge: p_e of one") {
  // Everything in a single cell: p_o = 1, p_e = 1 -> defined as 1.
  CHECK(kappa(matrix_of({{7, 0}, {0, 0}})) == 1.0);
  // All mass in one off-diagonal cell: p_o = 0, p_e = ... rows {7,0} cols
  // {0,7} -> p_e = 0 -> kappa = (0-0)/(1-0) = 0.
  CHECK(kappa(matrix_of({{0, 7}, {0, 0}})) == 0.0);
}

TEST_CASE("kappa agrees with the marginal oracle on random matrices") {
  SplitMix64 rng(321);
  for (int round = 0; round < 200; ++round) {
    std::size_t k = 2 + rng.below(9);
    std::vector<std::vector<std::uint64_t>> counts(
        k, std::vector<std::uint64_t>(k, 0));
    for (std::size_t g = 0; g < k; ++g)
      for (std::size_t p = 0; p < k; ++p) counts[g][p] = rng.below(25);
    counts[0][0] += 1;  // never empty
    double expected = oracle::kappa(counts);
    double got = kappa(matrix_of(counts));
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("kappa is invariant under class permutation") {
  SplitMix64 rng(8);
  std::vector<std::vector<std::uint64_t>> counts(4,
                                                 std::vector<std::uint64_t>(4));
  for (auto& row : counts)
    for (auto& c : row) c = rng.below(12);
  counts[2][2] += 3;
  double base = kappa(matrix_of(counts));

  std::vector<std::size_t> perm = {2, 0, 3, 1};
  std::vector<std::vector<std::uint64_t>> permuted(
      4, std::vector<std::uint64_t>(4));
  for (std::size_t g = 0; g < 4; ++g)
    for (std::size_t p = 0; p < 4; ++p)
      permuted[perm[g]][perm[p]] = counts[g][p];
  CHECK(kappa(matrix_of(permuted)) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("error cells are ranked with deterministic ties") {
  ConfusionMatrix m = matrix_of({{5, 0, 0, 3}, {3, 5, 0, 0}, {0, 0, 5, 0},
                                 {0, 0, 7, 5}});
  auto cells = error_cells(m, 10);
  REQUIRE(cells.size() == 3);
  CHECK(cells[0].gold == 3);
  CHECK(cells[0].predicted == 2);
  CHECK(cells[0].count == 7);
  // The two count-3 cells tie; (0,3) precedes (1,0).
  CHECK(cells[1].gold == 0);
  CHECK(cells[1].predicted == 3);
  CHECK(cells[2].gold == 1);
  CHECK(cells[2].predicted == 0);

  CHECK(error_cells(matrix_of({{3, 0}, {0, 2}}), 5).empty());
  auto single = error_cells(matrix_of({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}), 5);
  CHECK(single.empty());
}

TEST_CASE("student t two-sided p against published critical values") {
  // Two-sided critical values of Student's t.
  struct Row {
    std::size_t df;
    double t;
    double p;
  };
  const Row rows[] = {
      {2, 4.302653, 0.05}, {5, 2.570582, 0.05}, {9, 2.262157, 0.05},
      {2, 9.924843, 0.01}, {5, 4.032143, 0.01}, {9, 3.249836, 0.01},
      {2, 2.919986, 0.10}, {5, 2.015048, 0.10}, {9, 1.833113, 0.10},
  };
  for (const Row& row : rows) {
    CHECK(student_t_two_sided_p(row.t, row.df) ==
          doctest::Approx(row.p).epsilon(1e-6));
    CHECK(student_t_two_sided_p(-row.t, row.df) ==
          doctest::Approx(row.p).epsilon(1e-6));
  }
}

TEST_CASE("incomplete beta p matches the quadrature oracle") {
  for (std::size_t df : {2ul, 3ul, 5ul, 9ul, 17ul}) {
    for (double t : {0.1, 0.5, 1.0, 2.0, 3.5, 6.0}) {
      double mine = student_t_two_sided_p(t, df);
      double quad = oracle::student_t_two_sided_p(t, df);
      CHECK(mine == doctest::Approx(quad).epsilon(1e-9));
    }
  }
}

TEST_CASE("paired t-test hand case") {
  std::vector<double> a = {0.8, 0.9, 0.7};
  std::vector<double> b = {0.6, 0.8, 0.5};
  TTestResult r = paired_t_test(a, b);
  CHECK(r.df == 2);
  CHECK(r.mean_diff == doctest::Approx(0.16666666666667));
  CHECK(r.t == doctest::Approx(5.0).epsilon(1e-9));
  // For df = 2 the closed form is p = 1 - t / sqrt(t^2 + 2).
  CHECK(r.p == doctest::Approx(1.0 - 5.0 / std::sqrt(27.0)).epsilon(1e-9));
}

TEST_CASE("paired t-test edges") {
  std::vector<double> same = {0.5, 0.6, 0.7};
  TTestResult equal = paired_t_test(same, same);
  CHECK(equal.t == 0.0);
  CHECK(equal.p == 1.0);

  std::vector<double> a = {1.0, 1.0, 1.0, 1.0};
  std::vector<double> b = {0.0, 0.0, 0.0, 0.0};
  TTestResult constant = paired_t_test(a, b);
  CHECK(std::isinf(constant.t));
  CHECK(constant.t > 0);
  CHECK(constant.p == 0.0);

  std::vector<double> short_a = {1.0};
  CHECK_THROWS_AS(paired_t_test(short_a, short_a), std::invalid_argument);
  std::vector<double> mismatched = {1.0, 2.0};
  std::vector<double> three = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(paired_t_test(mismatched, three), std::invalid_argument);
}

TEST_CASE("paired t-test antisymmetry") {
  SplitMix64 rng(17);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = 2 + rng.below(9);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.next_double();
      b[i] = rng.next_double();
    }
    TTestResult ab = paired_t_test(a, b);
    TTestResult ba = paired_t_test(b, a);
    CHECK(ab.t == -ba.t);
    CHECK(ab.p == ba.p);
  }
}

namespace {

// Two well-separated vocabulary clusters.
struct TinyCorpus {
  std::vector<AnalyzedDocument> docs;
  std::vector<std::string> ids;
  std::vector<std::size_t> labels;
  std::vector<std::string> classes = {"left", "right"};
  std::vector<std::pair<std::string, std::string>> id_author;
};

TinyCorpus tiny_separable(std::size_t per_class) {
  TinyCorpus tc;
  SplitMix64 rng(4);
  const char* left_words[] = {"gold", "silver", "copper", "zinc"};
  const char* right_words[] = {"wheat", "corn", "barley", "oats"};
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      std::string text;
      for (int w = 0; w < 12; ++w) {
        text += (c == 0 ? left_words : right_words)[rng.below(4)];
        text += ' ';
      }
      text += '.';
      std::string id = tc.classes[c] + "/" + std::to_string(i);
      tc.docs.push_back(analyze(text));
      tc.ids.push_back(id);
      tc.labels.push_back(c);
      tc.id_author.emplace_back(id, tc.classes[c]);
    }
  }
  return tc;
}

}  // namespace

TEST_CASE("cross validation on separable clusters is perfect") {
  TinyCorpus tc = tiny_separable(8);
  FoldAssignment folds = make_folds(tc.id_author, 2, 1);
  PipelineConfig config;
  EvalReport report =
      cross_validate(tc.docs, tc.ids, tc.labels, tc.classes, folds, config);
  CHECK(report.accuracy == doctest::Approx(1.0));
  CHECK(report.kappa == doctest::Approx(1.0));
  CHECK(report.per_fold_accuracy.size() == 2);
  CHECK(report.matrix.total() == tc.docs.size());
}

TEST_CASE("majority baseline sits at chance on balanced data") {
  TinyCorpus tc = tiny_separable(10);
  FoldAssignment folds = make_folds(tc.id_author, 5, 2);
  PipelineConfig config;
  config.learner = Learner::majority;
  EvalReport report =
      cross_validate(tc.docs, tc.ids, tc.labels, tc.classes, folds, config);
  CHECK(report.accuracy == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(report.kappa) <= 0.05);
}

TEST_CASE("per-fold selection keeps the pipeline leak-free") {
  TinyCorpus tc = tiny_separable(8);
  FoldAssignment folds = make_folds(tc.id_author, 2, 3);
  PipelineConfig config;
  config.selection_n = 4;
  EvalReport report =
      cross_validate(tc.docs, tc.ids, tc.labels, tc.classes, folds, config);
  CHECK(report.accuracy == doctest::Approx(1.0));

  config.paper_protocol = true;
  EvalReport paper =
      cross_validate(tc.docs, tc.ids, tc.labels, tc.classes, folds, config);
  CHECK(paper.accuracy == doctest::Approx(1.0));
}

TEST_CASE("cross validation rejects missing fold entries") {
  TinyCorpus tc = tiny_separable(4);
  FoldAssignment folds;  // empty
  folds.k = 2;
  PipelineConfig config;
  CHECK_THROWS_AS(
      cross_validate(tc.docs, tc.ids, tc.labels, tc.classes, folds, config),
      config_error);
}

TEST_CASE("report json and text round trip") {
  TinyCorpus tc = tiny_separable(6);
  FoldAssignment folds = make_folds(tc.id_author, 3, 7);
  PipelineConfig config;
  EvalReport report =
      cross_validate(tc.docs, tc.ids, tc.labels, tc.classes, folds, config);

  std::string json = report_to_json(report);
  EvalReport loaded = report_from_json(json);
  CHECK(loaded.accuracy == report.accuracy);
  CHECK(loaded.kappa == report.kappa);
  CHECK(loaded.matrix.counts == report.matrix.counts);
  CHECK(loaded.per_fold_accuracy == report.per_fold_accuracy);
  CHECK(report_to_json(loaded) == json);

  std::string text = report_to_text(report);
  CHECK(text.find("accuracy") != std::string::npos);
  std::string csv = matrix_to_csv(report.matrix);
  CHECK(csv.find("left") != std::string::npos);
}
