#include "defectpred/eval.hpp"

#include "defectpred/error.hpp"
#include "support/synth.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace defectpred;
using namespace defectpred::eval;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

eval::ExtractedRelease small_extracted(int files, std::uint64_t seed) {
  synth::Options options;
  options.files = files;
  options.planted = files / 3;
  options.seed = seed;
  return extract_release(synth::to_release(synth::planted_corpus(options)));
}

}  // namespace

TEST_CASE("scc matches monotone agreement and is rank-invariant") {
  CHECK(scc(vec({1, 2, 3}), vec({1, 2, 3})) == doctest::Approx(1.0));
  CHECK(scc(vec({1, 2, 3}), vec({-1, -2, -3})) == doctest::Approx(-1.0));
  CHECK(scc(vec({0.1, 0.4, 0.2}), vec({0, 3, 1})) == doctest::Approx(1.0));
  std::mt19937_64 gen(31);
  for (int round = 0; round < 30; ++round) {
    Eigen::VectorXd p(12), a(12);
    for (Eigen::Index i = 0; i < 12; ++i) {
      p(i) = static_cast<double>(gen() % 40) / 3.0 - 5.0;
      a(i) = static_cast<double>(gen() % 6);
    }
    Eigen::VectorXd fp(p.size());  // strictly increasing transform, scalar exp
    for (Eigen::Index i = 0; i < p.size(); ++i) fp(i) = std::exp(0.3 * p(i)) + 2.0;
    CHECK(scc(p, a) == doctest::Approx(scc(fp, a)).epsilon(1e-9));
  }
}

TEST_CASE("mae basics") {
  CHECK(mae(vec({1, 2}), vec({1, 2})) == 0.0);
  CHECK(mae(vec({1, 2}), vec({2, 4})) == doctest::Approx(1.5));
  CHECK(mae(vec({-1}), vec({0})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(mae(vec({1}), vec({1, 2})), Error);
  // constant shifts are fully visible in the error
  Eigen::VectorXd a = vec({0, 1, 2, 5});
  CHECK(mae((a.array() + 2.5).matrix(), a) == doctest::Approx(2.5));
}

TEST_CASE("paired_t_test oracle values") {
  // d = (1,2,3): t = 2 / (1/sqrt(3)) = 3.4641, p = 1 - sqrt(6/7) = 0.0742
  auto r = paired_t_test({2, 4, 6}, {1, 2, 3});
  CHECK(r.t == doctest::Approx(3.4641).epsilon(1e-3));
  CHECK(r.p == doctest::Approx(0.0742).epsilon(1e-2));
  CHECK(!r.degenerate);

  SUBCASE("identical vectors: t=0, p=1") {
    auto same = paired_t_test({1, 2, 3}, {1, 2, 3});
    CHECK(same.t == 0.0);
    CHECK(same.p == 1.0);
    CHECK(!same.degenerate);
  }
  SUBCASE("constant nonzero difference is degenerate") {
    auto degenerate = paired_t_test({2, 3, 4}, {1, 2, 3});
    CHECK(degenerate.degenerate);
    CHECK(degenerate.p == 0.0);
    CHECK(std::isinf(degenerate.t));
  }
  SUBCASE("antisymmetry") {
    std::mt19937_64 gen(8);
    for (int round = 0; round < 20; ++round) {
      std::vector<double> a(10), b(10);
      for (int i = 0; i < 10; ++i) {
        a[static_cast<std::size_t>(i)] = static_cast<double>(gen() % 100) / 7.0;
        b[static_cast<std::size_t>(i)] = static_cast<double>(gen() % 100) / 7.0;
      }
      auto ab = paired_t_test(a, b);
      auto ba = paired_t_test(b, a);
      CHECK(ab.t == doctest::Approx(-ba.t).epsilon(1e-12));
      CHECK(ab.p == doctest::Approx(ba.p).epsilon(1e-12));
    }
  }
}

TEST_CASE("fold_permutation is a pure function of seed, repetition and count") {
  auto a = fold_permutation(42, 3, 100);
  auto b = fold_permutation(42, 3, 100);
  CHECK(a == b);
  CHECK(fold_permutation(42, 4, 100) != a);
  CHECK(fold_permutation(43, 3, 100) != a);
  // it is a permutation
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
}

TEST_CASE("stratified folds preserve the defective share") {
  std::vector<bool> defective(100, false);
  for (std::size_t i = 0; i < 30; ++i) defective[i * 3] = true;  // 30 defective
  for (int rep = 0; rep < 5; ++rep) {
    std::size_t train_size = 0;
    auto perm = stratified_fold_permutation(7, rep, defective, 0.9, &train_size);
    CHECK(train_size == 90);
    auto sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
    std::size_t buggy_in_train = 0;
    for (std::size_t i = 0; i < train_size; ++i)
      if (defective[perm[i]]) ++buggy_in_train;
    CHECK(buggy_in_train == 27);  // 90% of 30
  }
  // deterministic
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  CHECK(stratified_fold_permutation(7, 2, defective, 0.9, &size_a) ==
        stratified_fold_permutation(7, 2, defective, 0.9, &size_b));
}

TEST_CASE("stratified cross-validation runs end to end") {
  auto extracted = small_extracted(60, 43);
  PipelineConfig config;
  CvConfig cv;
  cv.repetitions = 2;
  cv.stratified = true;
  auto report = cross_validate(extracted, config, cv);
  CHECK(report.reps.size() == 2);
}

TEST_CASE("cross_validate splits 100 files into 90 train / 10 test") {
  auto extracted = small_extracted(100, 3);
  PipelineConfig config;
  config.kinds = {FeatureKind::term};
  config.term_features = 5;
  CvConfig cv;
  cv.repetitions = 1;
  cv.seed = 5;
  auto report = cross_validate(extracted, config, cv);
  REQUIRE(report.reps.size() == 1);
  REQUIRE(report.test_folds.size() == 1);
  CHECK(report.test_folds[0].size() == 10);
}

TEST_CASE("same seed reproduces the report bit for bit") {
  auto extracted = small_extracted(60, 17);
  PipelineConfig config;
  config.kinds = {FeatureKind::term, FeatureKind::type};
  config.term_features = 5;
  config.type_features = 5;
  CvConfig cv;
  cv.repetitions = 4;
  cv.seed = 11;
  auto a = cross_validate(extracted, config, cv);
  auto b = cross_validate(extracted, config, cv);
  REQUIRE(a.reps.size() == b.reps.size());
  for (std::size_t i = 0; i < a.reps.size(); ++i) {
    CHECK(a.reps[i].scc == b.reps[i].scc);
    CHECK(a.reps[i].mae == b.reps[i].mae);
  }
}

TEST_CASE("folds depend only on the seed, not the pipeline config") {
  auto extracted = small_extracted(60, 23);
  CvConfig cv;
  cv.repetitions = 3;
  cv.seed = 99;
  PipelineConfig spearman_config;
  spearman_config.kinds = {FeatureKind::term};
  PipelineConfig mi_config;
  mi_config.kinds = {FeatureKind::type};
  mi_config.method = featsel::SelectionMethod::mi;
  auto a = cross_validate(extracted, spearman_config, cv);
  auto b = cross_validate(extracted, mi_config, cv);
  CHECK(a.test_folds == b.test_folds);
}

TEST_CASE("parallel repetitions reproduce the sequential report") {
  auto extracted = small_extracted(60, 29);
  PipelineConfig config;
  config.kinds = {FeatureKind::term};
  CvConfig sequential;
  sequential.repetitions = 6;
  sequential.seed = 7;
  CvConfig parallel = sequential;
  parallel.threads = 4;
  auto a = cross_validate(extracted, config, sequential);
  auto b = cross_validate(extracted, config, parallel);
  for (std::size_t i = 0; i < a.reps.size(); ++i) {
    CHECK(a.reps[i].scc == b.reps[i].scc);
    CHECK(a.reps[i].mae == b.reps[i].mae);
  }
}

TEST_CASE("cross_validate rejects bad configurations") {
  auto extracted = small_extracted(40, 31);
  PipelineConfig config;
  CvConfig cv;
  SUBCASE("no kinds") {
    config.kinds = {};
    CHECK_THROWS_AS(cross_validate(extracted, config, cv), Error);
  }
  SUBCASE("combined must be expanded") {
    config.kinds = {FeatureKind::combined};
    CHECK_THROWS_AS(cross_validate(extracted, config, cv), Error);
  }
  SUBCASE("train fraction bounds") {
    cv.train_fraction = 1.0;
    CHECK_THROWS_AS(cross_validate(extracted, config, cv), Error);
  }
}

TEST_CASE("report means equal the arithmetic mean of repetitions") {
  auto extracted = small_extracted(50, 37);
  PipelineConfig config;
  CvConfig cv;
  cv.repetitions = 5;
  cv.seed = 2;
  auto report = cross_validate(extracted, config, cv);
  double sum_scc = 0.0;
  double sum_mae = 0.0;
  for (const auto& rep : report.reps) {
    sum_scc += rep.scc;
    sum_mae += rep.mae;
  }
  CHECK(report.mean_scc() == doctest::Approx(sum_scc / 5.0).epsilon(1e-12));
  CHECK(report.mean_mae() == doctest::Approx(sum_mae / 5.0).epsilon(1e-12));
}

TEST_CASE("aggregate averages releases without weighting") {
  EvalReport a;
  a.configuration = "cfg";
  a.reps = {{0.4, 1.0}};
  EvalReport b;
  b.configuration = "cfg";
  b.reps = {{0.6, 2.0}};
  auto rows = aggregate({{"rel1", a}, {"rel2", b}});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].release == "ALL");
  CHECK(rows[0].mean_scc == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rows[0].mean_mae == doctest::Approx(1.5).epsilon(1e-12));

  SUBCASE("single report aggregates to itself") {
    auto single = aggregate({{"rel1", a}});
    CHECK(single[0].mean_scc == doctest::Approx(0.4));
    CHECK(single[1].release == "rel1");
  }
  SUBCASE("table contains every release and config") {
    auto table = format_aggregate_table(rows);
    CHECK(table.find("Across all releases") != std::string::npos);
    CHECK(table.find("rel1") != std::string::npos);
    CHECK(table.find("cfg") != std::string::npos);
  }
}

TEST_CASE("baseline kind flows through the harness") {
  synth::Options options;
  options.files = 50;
  options.planted = 15;
  options.seed = 41;
  auto files = synth::planted_corpus(options);
  auto release = synth::to_release(files);
  for (auto& f : release.files)
    f.baseline_metrics = {{"loc", static_cast<double>(f.source.text.size())},
                          {"wmc", static_cast<double>(f.defect_count % 3 + 1)}};
  release.baseline_names = {"loc", "wmc"};
  auto extracted = extract_release(std::move(release));
  PipelineConfig config;
  config.kinds = {FeatureKind::baseline};
  config.method = featsel::SelectionMethod::none;
  CvConfig cv;
  cv.repetitions = 2;
  auto report = cross_validate(extracted, config, cv);
  CHECK(report.reps.size() == 2);
}
